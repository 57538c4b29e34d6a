use std::sync::Arc;

use super::hom::{dual_module, hom_left, HomSpace};
use super::tensor::{tensor_over_capped, TensorProduct};
use super::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::exactlin::{infeasibility_certificate, solve_affine, Matrix, Rational, Subspace};
use crate::structures::{Algebra, RingMap};
use crate::DEFAULT_DIM_CAP;

/// The counit `M (x)_A Hom_B(M, Y) -> Y`, `m (x) f -> (m) f`, with the spaces
/// it is built from.
#[derive(Clone, Debug)]
pub struct Counit {
    pub hom: HomSpace,
    pub tensor: TensorProduct,
    pub map: BimoduleMap,
}

impl Counit {
    /// Matrix of the counit on the plain tensor space `M (x) Hom_B(M, Y)`.
    pub fn plain_matrix(&self) -> Matrix {
        plain_evaluation(&self.hom, self.tensor.left_factor_dim())
    }
}

pub(crate) fn plain_evaluation(hom: &HomSpace, dm: usize) -> Matrix {
    let f = hom.space().field();
    let dh = hom.dim();
    let dy = hom.target_dim();
    let mats: Vec<Matrix> = (0..dh).map(|k| hom.matrix(k)).collect();
    Matrix::from_fn(f, dy, dm * dh, |r, c| mats[c % dh].get(r, c / dh).clone())
}

pub fn counit(m: &Bimodule, y: &Bimodule) -> Result<Counit> {
    counit_capped(m, y, DEFAULT_DIM_CAP, "M (x)_A Hom_B(M, Y)")
}

pub(crate) fn counit_capped(m: &Bimodule, y: &Bimodule, cap: usize, what: &str) -> Result<Counit> {
    let hom = hom_left(m, y)?;
    let tensor = tensor_over_capped(m, hom.module(), cap, what)?;
    let plain = plain_evaluation(&hom, m.dim());
    let matrix = plain.mul(tensor.section());
    if !matrix.mul(tensor.projection()).sub(&plain).is_zero() {
        return Err(Error::Inconsistent(
            "evaluation does not descend through the tensor relations".into(),
        ));
    }
    let map = BimoduleMap::new(tensor.module().clone(), y.clone(), matrix)?;
    Ok(Counit { hom, tensor, map })
}

/// `ev_M: M (x)_A *M -> B`.
pub fn evaluation_map(m: &Bimodule) -> Result<Counit> {
    counit(m, &Bimodule::regular(Arc::clone(m.left_algebra())))
}

/// `S = End_B(M)` with product "apply `f`, then `g`", the canonical map
/// `i: A -> S`, and `M` as a `B`-`S` bimodule.
#[derive(Clone, Debug)]
pub struct Endomorphisms {
    pub algebra: Arc<Algebra>,
    pub hom: HomSpace,
    pub canonical: RingMap,
    pub module: Bimodule,
}

pub fn endomorphism_ring(m: &Bimodule) -> Result<Endomorphisms> {
    let hom = hom_left(m, m)?;
    let d = hom.dim();
    if d == 0 {
        return Err(Error::Precondition(
            "the endomorphism ring of the zero module is the zero ring".into(),
        ));
    }
    let f = m.field();
    let mats: Vec<Matrix> = (0..d).map(|k| hom.matrix(k)).collect();
    let coords = |x: &Matrix| {
        hom.coords(x)
            .ok_or_else(|| Error::Inconsistent("End_B(M) is not closed under composition".into()))
    };
    let mut table = Vec::with_capacity(d);
    for fi in &mats {
        let mut row = Vec::with_capacity(d);
        for fj in &mats {
            row.push(coords(&fj.mul(fi))?);
        }
        table.push(row);
    }
    let unit = coords(&Matrix::identity(f, m.dim()))?;
    let algebra = Arc::new(Algebra::new(f, table, unit)?);
    let na = m.right_algebra().dim();
    let mut canon = Matrix::zeros(f, d, na);
    for j in 0..na {
        for (r, x) in coords(m.right_action(j))?.into_iter().enumerate() {
            canon.set(r, j, x);
        }
    }
    let canonical = RingMap::new(m.right_algebra().clone(), algebra.clone(), canon)?;
    let module = Bimodule::new_unchecked(
        m.left_algebra().clone(),
        algebra.clone(),
        m.dim(),
        m.left_actions().to_vec(),
        mats,
    );
    Ok(Endomorphisms {
        algebra,
        hom,
        canonical,
        module,
    })
}

/// Evidence for a generator verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorWitness {
    /// Tensor coordinates of an element mapping to `1_B`.
    Preimage(Vec<Rational>),
    /// A functional `phi` on `B` with `phi o ev = 0` and `phi(1) = 1`.
    Cokernel(Vec<Rational>),
}

impl GeneratorWitness {
    /// Re-checks the witness against an evaluation matrix and the unit of `B`.
    pub fn revalidate(&self, ev: &Matrix, unit: &[Rational]) -> bool {
        match self {
            GeneratorWitness::Preimage(x) => x.len() == ev.cols() && ev.mul_vec(x) == unit,
            GeneratorWitness::Cokernel(phi) => {
                let f = ev.field();
                phi.len() == ev.rows()
                    && ev.vec_mul(phi).iter().all(Rational::is_zero)
                    && f.sum(phi.iter().zip(unit).map(|(a, b)| f.mul(a, b)).collect::<Vec<_>>().iter())
                        .is_one()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorVerdict {
    pub is_generator: bool,
    pub ev: Counit,
    pub witness: GeneratorWitness,
}

/// `M` generates `B`-Mod iff `ev_M` is onto.
pub fn is_generator(m: &Bimodule) -> Result<GeneratorVerdict> {
    let ev = evaluation_map(m)?;
    let mat = ev.map.matrix();
    let unit = m.left_algebra().unit().to_vec();
    let witness = match solve_affine(mat, &unit)? {
        Some(sol) => GeneratorWitness::Preimage(sol.particular),
        None => GeneratorWitness::Cokernel(
            infeasibility_certificate(mat, &unit)
                .ok_or_else(|| Error::Inconsistent("no cokernel functional".into()))?,
        ),
    };
    Ok(GeneratorVerdict {
        is_generator: matches!(witness, GeneratorWitness::Preimage(_)),
        ev,
        witness,
    })
}

/// Dual basis `{x_k, f_k}` with `y = sum_k ((y) f_k) . x_k` for every `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub xs: Vec<Vec<Rational>>,
    /// `f_k` as `dim B x dim M` matrices.
    pub fs: Vec<Matrix>,
}

impl DualBasis {
    /// Checks left-linearity of every `f_k` on all basis elements and the
    /// dual basis identity on every basis vector of `M`.
    pub fn revalidate(&self, m: &Bimodule) -> bool {
        let b = m.left_algebra();
        let dm = m.dim();
        if self.xs.len() != self.fs.len() {
            return false;
        }
        for fk in &self.fs {
            if fk.shape() != (b.dim(), dm) {
                return false;
            }
            for i in 0..b.dim() {
                if b.left_regular(i).mul(fk) != fk.mul(m.left_action(i)) {
                    return false;
                }
            }
        }
        let f = m.field();
        let mut total = Matrix::zeros(f, dm, dm);
        for (xk, fk) in self.xs.iter().zip(&self.fs) {
            for j in 0..dm {
                let v = m.left_of(&fk.col(j)).mul_vec(xk);
                for (r, x) in v.into_iter().enumerate() {
                    let cur = total.get(r, j).clone();
                    total.set(r, j, f.add(&cur, &x));
                }
            }
        }
        total.is_identity()
    }
}

#[derive(Clone, Debug)]
pub struct ProjectivityVerdict {
    pub holds: bool,
    pub dual_basis: Option<DualBasis>,
    /// A functional on `End_k(M)` vanishing on every `y -> ((y) f) . x` but
    /// not on the identity.
    pub obstruction: Option<Vec<Rational>>,
}

/// Solves for `x_k` against the given dual maps `f_k`.
pub(crate) fn dual_basis_for(m: &Bimodule, fs: &[Matrix]) -> Result<ProjectivityVerdict> {
    let f = m.field();
    let dm = m.dim();
    let r = fs.len();
    let mut c = Matrix::zeros(f, dm * dm, dm * r);
    for (k, fk) in fs.iter().enumerate() {
        for j in 0..dm {
            let l = m.left_of(&fk.col(j));
            for p in 0..dm {
                for i in 0..dm {
                    let x = l.get(p, i);
                    if !x.is_zero() {
                        c.set(p * dm + j, i * r + k, x.clone());
                    }
                }
            }
        }
    }
    let rhs = Matrix::identity(f, dm).into_data();
    match solve_affine(&c, &rhs)? {
        Some(sol) => {
            let xs = (0..r)
                .map(|k| (0..dm).map(|i| sol.particular[i * r + k].clone()).collect())
                .collect();
            Ok(ProjectivityVerdict {
                holds: true,
                dual_basis: Some(DualBasis {
                    xs,
                    fs: fs.to_vec(),
                }),
                obstruction: None,
            })
        }
        None => Ok(ProjectivityVerdict {
            holds: false,
            dual_basis: None,
            obstruction: infeasibility_certificate(&c, &rhs),
        }),
    }
}

/// Whether `M` is finitely generated projective as a left `B`-module.
pub fn is_fg_projective_left(m: &Bimodule) -> Result<ProjectivityVerdict> {
    let dual = dual_module(m)?;
    let fs: Vec<Matrix> = (0..dual.dim()).map(|k| dual.matrix(k)).collect();
    dual_basis_for(m, &fs)
}

/// Whether `M` is finitely generated projective as a right `A`-module. The
/// dual basis refers to `M` as a left module over `A^op`.
pub fn is_fg_projective_right(m: &Bimodule) -> Result<ProjectivityVerdict> {
    is_fg_projective_left(&m.opposite())
}

/// `Tr_M(N)`: the span of all images `(x) f`, `f in Hom_B(M, N)`.
pub fn trace_in(m: &Bimodule, n: &Bimodule) -> Result<Subspace> {
    let hom = hom_left(m, n)?;
    let mut cols = Vec::new();
    for k in 0..hom.dim() {
        let fk = hom.matrix(k);
        cols.extend((0..m.dim()).map(|j| fk.col(j)));
    }
    Ok(Subspace::span_vectors(m.field(), n.dim(), &cols))
}

/// `Tr_M(B)`, a two-sided ideal of `B`.
pub fn trace_ideal(m: &Bimodule) -> Result<Subspace> {
    trace_in(m, &Bimodule::regular(Arc::clone(m.left_algebra())))
}

/// `M (x)_S *M -> B` for `S = End_B(M)`.
pub fn ev_over_s(m: &Bimodule) -> Result<(Endomorphisms, Counit)> {
    let end = endomorphism_ring(m)?;
    let ev = counit(&end.module, &Bimodule::regular(Arc::clone(m.left_algebra())))?;
    Ok((end, ev))
}

#[derive(Clone, Debug)]
pub struct StaticVerdict {
    pub counit: Counit,
    pub injective: bool,
    pub surjective: bool,
}

impl StaticVerdict {
    pub fn is_static(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Whether `M (x)_S Hom_B(M, N) -> N` is an isomorphism.
pub fn static_check(m: &Bimodule, n: &Bimodule) -> Result<StaticVerdict> {
    let end = endomorphism_ring(m)?;
    let counit = counit(&end.module, n)?;
    Ok(StaticVerdict {
        injective: counit.map.is_injective(),
        surjective: counit.map.is_surjective(),
        counit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::structures::validate_ring_map;

    fn q() -> Field {
        Field::Rationals
    }

    fn dual_numbers_over_k() -> Bimodule {
        let b = Arc::new(Algebra::truncated_polynomial(q(), 2));
        Bimodule::regular(b.clone()).restrict_right(&RingMap::unit_map(b)).unwrap()
    }

    fn trivial_over_dual_numbers() -> Bimodule {
        let b = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let k = Arc::new(Algebra::ground(q()));
        Bimodule::new(
            b,
            k,
            vec![Matrix::identity(q(), 1), Matrix::zeros(q(), 1, 1)],
            vec![Matrix::identity(q(), 1)],
        )
        .unwrap()
    }

    #[test]
    fn ev_is_multiplication_for_b_over_k() {
        let m = dual_numbers_over_k();
        let ev = evaluation_map(&m).unwrap();
        assert_eq!(ev.tensor.dim(), 4);
        assert_eq!(ev.map.rank(), 2);
        let g = is_generator(&m).unwrap();
        assert!(g.is_generator);
        assert!(g.witness.revalidate(ev.map.matrix(), m.left_algebra().unit()));
    }

    #[test]
    fn endomorphisms_of_regular() {
        let m = dual_numbers_over_k();
        let end = endomorphism_ring(&m).unwrap();
        assert_eq!(end.algebra.dim(), 2);
        assert!(end.algebra.is_commutative());
        validate_ring_map(&end.canonical).unwrap();
        end.module.validate().unwrap();
    }

    #[test]
    fn trivial_module_is_not_projective_or_generating() {
        let t = trivial_over_dual_numbers();
        let p = is_fg_projective_left(&t).unwrap();
        assert!(!p.holds);
        assert!(p.obstruction.is_some());
        let g = is_generator(&t).unwrap();
        assert!(!g.is_generator);
        assert!(g.witness.revalidate(g.ev.map.matrix(), t.left_algebra().unit()));
        let tr = trace_ideal(&t).unwrap();
        assert_eq!(tr.dim(), 1);
        assert!(tr.contains(&[Rational::zero(), Rational::one()]));
    }

    #[test]
    fn trivial_module_trace_is_static() {
        let t = trivial_over_dual_numbers();
        let (_, ev) = ev_over_s(&t).unwrap();
        assert!(ev.map.is_injective());
        assert!(!ev.map.is_surjective());
        let b = t.left_algebra().clone();
        let (tr_mod, _) = Bimodule::regular(b).submodule(&trace_ideal(&t).unwrap()).unwrap();
        assert!(static_check(&t, &tr_mod).unwrap().is_static());
    }

    #[test]
    fn regular_has_dual_basis() {
        let m = dual_numbers_over_k();
        let p = is_fg_projective_left(&m).unwrap();
        assert!(p.holds);
        assert!(p.dual_basis.unwrap().revalidate(&m));
        assert!(is_fg_projective_right(&m).unwrap().holds);
    }
}
