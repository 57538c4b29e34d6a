//! Finite-dimensional bimodules, their maps, Hom spaces and tensor products.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Rational, Subspace};
use crate::structures::{combine, same_algebra, Algebra, RingMap};

mod eval;
mod hom;
mod tensor;

pub(crate) use eval::{counit_capped, dual_basis_for, plain_evaluation};
pub use eval::{
    counit, ev_over_s, evaluation_map, endomorphism_ring, is_fg_projective_left,
    is_fg_projective_right, is_generator, static_check, trace_in, trace_ideal, Counit, DualBasis,
    Endomorphisms, GeneratorVerdict, GeneratorWitness, ProjectivityVerdict, StaticVerdict,
};
pub use hom::{bimodule_hom, dual_module, hom_left, intertwiners, HomSpace, HOM_UNKNOWNS_CAP};
pub use tensor::{tensor_over, tensor_over_capped, TensorProduct};

/// A `B`-`A` bimodule on `F^dim`.
///
/// `left_action[i]` is the matrix of `e_i . -` for the basis of `B`;
/// `right_action[j]` is the matrix of `- . e_j` for the basis of `A`.
#[derive(Clone)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule(dim {}, left dim {}, right dim {})",
            self.dim,
            self.left.dim(),
            self.right.dim()
        )
    }
}

impl PartialEq for Bimodule {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && same_algebra(&self.left, &other.left)
            && same_algebra(&self.right, &other.right)
            && self.left_action == other.left_action
            && self.right_action == other.right_action
    }
}

impl Eq for Bimodule {}

impl Bimodule {
    /// Validated constructor.
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        let dim = left_action
            .first()
            .or(right_action.first())
            .map(|m| m.rows())
            .unwrap_or(0);
        let m = Self::new_unchecked(left, right, dim, left_action, right_action);
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Self {
        Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        }
    }

    /// Checks shapes, unitality, (anti-)multiplicativity and that the two
    /// actions commute, all on basis elements.
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidBimodule(s));
        let f = self.field();
        if self.right.field() != f {
            return bad("left and right algebras live over different fields".into());
        }
        if self.left_action.len() != self.left.dim() || self.right_action.len() != self.right.dim()
        {
            return bad(format!(
                "expected {} left and {} right action matrices, got {} and {}",
                self.left.dim(),
                self.right.dim(),
                self.left_action.len(),
                self.right_action.len()
            ));
        }
        for (side, mats) in [("left", &self.left_action), ("right", &self.right_action)] {
            for (i, m) in mats.iter().enumerate() {
                if m.shape() != (self.dim, self.dim) || m.field() != f {
                    return bad(format!("{side} action of e_{i} is not a {0}x{0} matrix", self.dim));
                }
                if m.data().iter().any(|x| !f.contains(x)) {
                    return bad(format!("{side} action of e_{i} has entries outside {f}"));
                }
            }
        }
        if !self.left_of(self.left.unit()).is_identity() {
            return bad("the unit of the left algebra does not act as the identity".into());
        }
        if !self.right_of(self.right.unit()).is_identity() {
            return bad("the unit of the right algebra does not act as the identity".into());
        }
        let nb = self.left.dim();
        for i in 0..nb {
            for j in 0..nb {
                let lhs = self.left_action[i].mul(&self.left_action[j]);
                if lhs != self.left_of(self.left.product(i, j)) {
                    return bad(format!("left action is not multiplicative on ({i}, {j})"));
                }
            }
        }
        let na = self.right.dim();
        for i in 0..na {
            for j in 0..na {
                // (m e_i) e_j = m (e_i e_j)
                let lhs = self.right_action[j].mul(&self.right_action[i]);
                if lhs != self.right_of(self.right.product(i, j)) {
                    return bad(format!("right action is not multiplicative on ({i}, {j})"));
                }
            }
        }
        for i in 0..nb {
            for j in 0..na {
                let l = &self.left_action[i];
                let r = &self.right_action[j];
                if l.mul(r) != r.mul(l) {
                    return bad(format!("actions of left e_{i} and right e_{j} do not commute"));
                }
            }
        }
        Ok(())
    }

    /// `B` as a `B`-`B` bimodule.
    pub fn regular(b: Arc<Algebra>) -> Self {
        let n = b.dim();
        let left = (0..n).map(|i| b.left_regular(i).clone()).collect();
        let right = (0..n).map(|i| b.right_regular(i).clone()).collect();
        Self::new_unchecked(b.clone(), b, n, left, right)
    }

    /// The zero bimodule.
    pub fn zero(left: Arc<Algebra>, right: Arc<Algebra>) -> Self {
        let f = left.field();
        let l = vec![Matrix::zeros(f, 0, 0); left.dim()];
        let r = vec![Matrix::zeros(f, 0, 0); right.dim()];
        Self::new_unchecked(left, right, 0, l, r)
    }

    /// Restriction of scalars on the right along `g: A' -> A`.
    pub fn restrict_right(&self, g: &RingMap) -> Result<Self> {
        if !same_algebra(g.target(), &self.right) {
            return Err(Error::AlgebraMismatch(
                "restrict_right: ring map does not land in the right algebra".into(),
            ));
        }
        let right = (0..g.source().dim())
            .map(|i| self.right_of(&g.apply(&g.source().basis_vector(i))))
            .collect();
        Ok(Self::new_unchecked(
            self.left.clone(),
            g.source().clone(),
            self.dim,
            self.left_action.clone(),
            right,
        ))
    }

    /// Restriction of scalars on the left along `g: B' -> B`.
    pub fn restrict_left(&self, g: &RingMap) -> Result<Self> {
        if !same_algebra(g.target(), &self.left) {
            return Err(Error::AlgebraMismatch(
                "restrict_left: ring map does not land in the left algebra".into(),
            ));
        }
        let left = (0..g.source().dim())
            .map(|i| self.left_of(&g.apply(&g.source().basis_vector(i))))
            .collect();
        Ok(Self::new_unchecked(
            g.source().clone(),
            self.right.clone(),
            self.dim,
            left,
            self.right_action.clone(),
        ))
    }

    /// `M` as an `A^op`-`B^op` bimodule.
    pub fn opposite(&self) -> Self {
        Self::new_unchecked(
            Arc::new(self.right.opposite()),
            Arc::new(self.left.opposite()),
            self.dim,
            self.right_action.clone(),
            self.left_action.clone(),
        )
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Self> {
        self.check_same_algebras(other, "direct_sum")?;
        let f = self.field();
        let d = self.dim + other.dim;
        let block = |a: &Matrix, b: &Matrix| {
            Matrix::from_fn(f, d, d, |r, c| {
                if r < self.dim && c < self.dim {
                    a.get(r, c).clone()
                } else if r >= self.dim && c >= self.dim {
                    b.get(r - self.dim, c - self.dim).clone()
                } else {
                    Rational::zero()
                }
            })
        };
        let left = self.left_action.iter().zip(&other.left_action).map(|(a, b)| block(a, b)).collect();
        let right =
            self.right_action.iter().zip(&other.right_action).map(|(a, b)| block(a, b)).collect();
        Ok(Self::new_unchecked(self.left.clone(), self.right.clone(), d, left, right))
    }

    /// The same bimodule in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change_basis: matrix is not invertible".into()))?;
        if p.rows() != self.dim {
            return Err(Error::DimensionMismatch("change_basis: wrong size".into()));
        }
        let conj = |m: &Matrix| inv.mul(m).mul(p);
        Ok(Self::new_unchecked(
            self.left.clone(),
            self.right.clone(),
            self.dim,
            self.left_action.iter().map(conj).collect(),
            self.right_action.iter().map(conj).collect(),
        ))
    }

    /// Restriction to an invariant subspace; returns the sub-bimodule and the
    /// inclusion matrix (`dim x sub.dim()`).
    pub fn submodule(&self, sub: &Subspace) -> Result<(Self, Matrix)> {
        if sub.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("submodule: ambient mismatch".into()));
        }
        let emb = sub.embedding();
        let coord = sub.coordinate_map();
        let restrict = |m: &Matrix, side: &str, i: usize| -> Result<Matrix> {
            let image = m.mul(&emb);
            let r = coord.mul(&image);
            if emb.mul(&r) != image {
                return Err(Error::InvalidBimodule(format!(
                    "subspace is not stable under the {side} action of e_{i}"
                )));
            }
            Ok(r)
        };
        let left = self
            .left_action
            .iter()
            .enumerate()
            .map(|(i, m)| restrict(m, "left", i))
            .collect::<Result<_>>()?;
        let right = self
            .right_action
            .iter()
            .enumerate()
            .map(|(i, m)| restrict(m, "right", i))
            .collect::<Result<_>>()?;
        Ok((
            Self::new_unchecked(self.left.clone(), self.right.clone(), sub.dim(), left, right),
            emb,
        ))
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left_action[i]
    }

    pub fn right_action(&self, i: usize) -> &Matrix {
        &self.right_action[i]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right_action
    }

    /// Matrix of `b . -` for an arbitrary element `b` of the left algebra.
    pub fn left_of(&self, b: &[Rational]) -> Matrix {
        combine(self.field(), self.dim, &self.left_action, b)
    }

    /// Matrix of `- . a` for an arbitrary element `a` of the right algebra.
    pub fn right_of(&self, a: &[Rational]) -> Matrix {
        combine(self.field(), self.dim, &self.right_action, a)
    }

    /// Action matrices of the left algebra's generators.
    pub fn left_generator_actions(&self) -> Vec<&Matrix> {
        self.left.generators().iter().map(|&i| &self.left_action[i]).collect()
    }

    pub fn right_generator_actions(&self) -> Vec<&Matrix> {
        self.right.generators().iter().map(|&i| &self.right_action[i]).collect()
    }

    /// `{x : b x = x b for all b}`; only meaningful when both sides are the
    /// same algebra.
    pub fn centralizer(&self) -> Result<Subspace> {
        if !same_algebra(&self.left, &self.right) {
            return Err(Error::AlgebraMismatch(
                "centralizer needs a bimodule over a single algebra".into(),
            ));
        }
        let f = self.field();
        let mut sub = Subspace::full(f, self.dim);
        for &g in self.left.generators() {
            let diff = self.left_action[g].sub(&self.right_action[g]);
            sub = restrict_kernel(&sub, &diff);
        }
        Ok(sub)
    }

    pub(crate) fn check_same_algebras(&self, other: &Bimodule, what: &str) -> Result<()> {
        if !same_algebra(&self.left, &other.left) || !same_algebra(&self.right, &other.right) {
            return Err(Error::AlgebraMismatch(format!(
                "{what}: bimodules are over different algebras"
            )));
        }
        Ok(())
    }
}

/// `{v in sub : c v = 0}`.
pub(crate) fn restrict_kernel(sub: &Subspace, c: &Matrix) -> Subspace {
    if sub.dim() == 0 {
        return sub.clone();
    }
    if sub.dim() == sub.ambient_dim() {
        let k = c.kernel();
        if k.dim() == sub.dim() {
            return sub.clone();
        }
        return Subspace::span(k.basis());
    }
    let emb = sub.embedding();
    let k = c.mul(&emb).kernel();
    if k.dim() == sub.dim() {
        return sub.clone();
    }
    Subspace::span(&emb.mul(&k.embedding()).transpose())
}

/// A bimodule homomorphism, stored as a `target.dim() x source.dim()` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    source: Bimodule,
    target: Bimodule,
    matrix: Matrix,
}

impl BimoduleMap {
    /// Validated constructor: the matrix must intertwine both actions on
    /// every basis element.
    pub fn new(source: Bimodule, target: Bimodule, matrix: Matrix) -> Result<Self> {
        let m = Self::new_unchecked(source, target, matrix);
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(source: Bimodule, target: Bimodule, matrix: Matrix) -> Self {
        BimoduleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidBimoduleMap(s));
        if !same_algebra(self.source.left_algebra(), self.target.left_algebra())
            || !same_algebra(self.source.right_algebra(), self.target.right_algebra())
        {
            return bad("source and target are over different algebras".into());
        }
        if self.matrix.shape() != (self.target.dim(), self.source.dim()) {
            return bad(format!(
                "matrix is {:?}, expected {}x{}",
                self.matrix.shape(),
                self.target.dim(),
                self.source.dim()
            ));
        }
        let f = &self.matrix;
        for (i, (t, s)) in self.target.left_actions().iter().zip(self.source.left_actions()).enumerate()
        {
            if t.mul(f) != f.mul(s) {
                return bad(format!("does not commute with the left action of e_{i}"));
            }
        }
        for (i, (t, s)) in
            self.target.right_actions().iter().zip(self.source.right_actions()).enumerate()
        {
            if t.mul(f) != f.mul(s) {
                return bad(format!("does not commute with the right action of e_{i}"));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Bimodule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `other` after `self`.
    pub fn then(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        if other.source != self.target {
            return Err(Error::DimensionMismatch("then: maps are not composable".into()));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        ))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Kernel as a sub-bimodule of the source, with its inclusion.
    pub fn kernel(&self) -> Result<(Bimodule, Matrix)> {
        self.source.submodule(&self.matrix.kernel())
    }

    /// Image as a sub-bimodule of the target.
    pub fn image(&self) -> Result<(Bimodule, Matrix)> {
        self.target.submodule(&self.matrix.image())
    }
}
