use std::collections::BTreeMap;
use std::sync::Arc;

use super::Bimodule;
use crate::error::{Error, Result};
use crate::exactlin::{sparse_kernel, Field, Matrix, Rational, SparseRow, Subspace};
use crate::structures::same_algebra;

/// `Hom_B(M, N)` for a `B`-`A` bimodule `M` and a `B`-`T` bimodule `N`, as an
/// `A`-`T` bimodule: `(m)(a f t) = ((m a) f) t`.
///
/// Elements are stored as flattened `dim N x dim M` matrices (row-major).
#[derive(Clone, Debug)]
pub struct HomSpace {
    module: Bimodule,
    space: Subspace,
    source_dim: usize,
    target_dim: usize,
}

impl HomSpace {
    /// The `A`-`T` bimodule structure on hom coordinates.
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The hom space inside the space of all flattened matrices.
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// The `k`-th basis map as a matrix.
    pub fn matrix(&self, k: usize) -> Matrix {
        unflatten(self.space.field(), self.target_dim, self.source_dim, self.space.vector(k))
    }

    pub fn element(&self, coeffs: &[Rational]) -> Matrix {
        unflatten(self.space.field(), self.target_dim, self.source_dim, &self.space.combine(coeffs))
    }

    /// Coordinates of a map, or `None` when it is not left-linear.
    pub fn coords(&self, f: &Matrix) -> Option<Vec<Rational>> {
        self.space.coords(f.data())
    }

    /// Coordinates of a map known to lie in the space (no membership check).
    pub fn coords_unchecked(&self, f: &Matrix) -> Vec<Rational> {
        self.space.pivots().iter().map(|&p| f.data()[p].clone()).collect()
    }
}

pub(crate) fn unflatten(field: Field, rows: usize, cols: usize, v: &[Rational]) -> Matrix {
    Matrix::from_vec(field, rows, cols, v.to_vec()).expect("flattened shape")
}

/// Largest `dim source * dim target` for which a Hom space is computed.
pub const HOM_UNKNOWNS_CAP: usize = 4096;

fn check_unknowns(ds: usize, dt: usize) -> Result<()> {
    let n = ds.saturating_mul(dt);
    if n > HOM_UNKNOWNS_CAP {
        return Err(Error::DimensionCap {
            what: format!("Hom space between modules of dimension {ds} and {dt}"),
            dim: n,
            cap: HOM_UNKNOWNS_CAP,
        });
    }
    Ok(())
}

/// Flattened `dt x ds` matrices `F` with `T F = F S` for every pair `(T, S)`.
pub fn intertwiners(field: Field, ds: usize, dt: usize, pairs: &[(&Matrix, &Matrix)]) -> Subspace {
    // row (i, j) of the system is (T F - F S)[i][j]
    let rows = pairs.iter().flat_map(|&(t, s)| {
        (0..dt * ds).filter_map(move |r| {
            let (i, j) = (r / ds, r % ds);
            let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
            for k in 0..dt {
                let x = t.get(i, k);
                if !x.is_zero() {
                    row.insert(k * ds + j, x.clone());
                }
            }
            for l in 0..ds {
                let x = s.get(l, j);
                if !x.is_zero() {
                    let e = row.entry(i * ds + l).or_insert_with(Rational::zero);
                    *e = field.sub(e, x);
                }
            }
            let row: SparseRow = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            (!row.is_empty()).then_some(row)
        })
    });
    sparse_kernel(field, ds * dt, rows)
}

/// `Hom_B(M, N)` as an `A`-`T` bimodule.
pub fn hom_left(m: &Bimodule, n: &Bimodule) -> Result<HomSpace> {
    if !same_algebra(m.left_algebra(), n.left_algebra()) {
        return Err(Error::AlgebraMismatch(
            "hom_left: modules have different left algebras".into(),
        ));
    }
    let f = m.field();
    let (ds, dt) = (m.dim(), n.dim());
    check_unknowns(ds, dt)?;
    let pairs: Vec<(&Matrix, &Matrix)> = n
        .left_generator_actions()
        .into_iter()
        .zip(m.left_generator_actions())
        .collect();
    let space = intertwiners(f, ds, dt, &pairs);
    let pivots = space.pivots().to_vec();
    let d = space.dim();
    let basis: Vec<Matrix> = (0..d).map(|k| unflatten(f, dt, ds, space.vector(k))).collect();
    let induced = |op: &dyn Fn(&Matrix) -> Matrix| -> Matrix {
        let mut out = Matrix::zeros(f, d, d);
        for (k, fk) in basis.iter().enumerate() {
            let image = op(fk);
            for (r, &p) in pivots.iter().enumerate() {
                out.set(r, k, image.data()[p].clone());
            }
        }
        out
    };
    // a . f = f o R_M(a), f . t = R_N(t) o f
    let left = m.right_actions().iter().map(|ra| induced(&|fk: &Matrix| fk.mul(ra))).collect();
    let right = n.right_actions().iter().map(|rt| induced(&|fk: &Matrix| rt.mul(fk))).collect();
    let module = Bimodule::new_unchecked(
        m.right_algebra().clone(),
        n.right_algebra().clone(),
        d,
        left,
        right,
    );
    Ok(HomSpace {
        module,
        space,
        source_dim: ds,
        target_dim: dt,
    })
}

/// `*M = Hom_B(M, B)` as an `A`-`B` bimodule.
pub fn dual_module(m: &Bimodule) -> Result<HomSpace> {
    hom_left(m, &Bimodule::regular(Arc::clone(m.left_algebra())))
}

/// Bimodule maps `P -> N` between bimodules over the same pair of algebras,
/// as flattened `dim N x dim P` matrices.
pub fn bimodule_hom(p: &Bimodule, n: &Bimodule) -> Result<Subspace> {
    p.check_same_algebras(n, "bimodule_hom")?;
    check_unknowns(p.dim(), n.dim())?;
    let mut pairs: Vec<(&Matrix, &Matrix)> = n
        .left_generator_actions()
        .into_iter()
        .zip(p.left_generator_actions())
        .collect();
    pairs.extend(n.right_generator_actions().into_iter().zip(p.right_generator_actions()));
    Ok(intertwiners(p.field(), p.dim(), n.dim(), &pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{Algebra, RingMap};

    fn q() -> Field {
        Field::Rationals
    }

    fn simple_module() -> Bimodule {
        let b = Arc::new(Algebra::matrix_algebra(q(), 2));
        let k = Arc::new(Algebra::ground(q()));
        let left = (0..4)
            .map(|idx| {
                let (i, j) = (idx / 2, idx % 2);
                Matrix::from_fn(q(), 2, 2, |r, c| {
                    if r == i && c == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            })
            .collect();
        Bimodule::new(b, k, left, vec![Matrix::identity(q(), 2)]).unwrap()
    }

    #[test]
    fn hom_from_regular_is_target() {
        let b = Arc::new(Algebra::upper_triangular(q(), 2));
        let reg = Bimodule::regular(b);
        let h = hom_left(&reg, &reg).unwrap();
        assert_eq!(h.dim(), 3);
        h.module().validate().unwrap();
    }

    #[test]
    fn schur_on_simple_module() {
        let m = simple_module();
        assert_eq!(hom_left(&m, &m).unwrap().dim(), 1);
        let d = dual_module(&m).unwrap();
        assert_eq!(d.dim(), 2);
        d.module().validate().unwrap();
    }

    #[test]
    fn hom_into_trivial_module() {
        let b = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let k = Arc::new(Algebra::ground(q()));
        let triv = Bimodule::new(
            b.clone(),
            k.clone(),
            vec![Matrix::identity(q(), 1), Matrix::zeros(q(), 1, 1)],
            vec![Matrix::identity(q(), 1)],
        )
        .unwrap();
        let reg = Bimodule::regular(b.clone()).restrict_right(&RingMap::unit_map(b)).unwrap();
        let h = hom_left(&reg, &triv).unwrap();
        assert_eq!(h.dim(), 1);
        for k in 0..h.dim() {
            assert!(h.coords(&h.matrix(k)).is_some());
        }
    }

    #[test]
    fn zero_module_has_zero_dual() {
        let b = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let z = Bimodule::zero(b.clone(), b);
        assert_eq!(dual_module(&z).unwrap().dim(), 0);
    }
}
