//! Finite-dimensional unital associative algebras given by structure
//! constants, and unital algebra homomorphisms between them.

use std::fmt;
use std::sync::Arc;

use crate::bimodule::{tensor_over, Bimodule, BimoduleMap, TensorProduct};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Rational, Subspace};

/// A unital associative algebra with basis `e_0 .. e_{dim-1}`.
///
/// `product(i, j)` is the coordinate vector of `e_i e_j`; `unit` is the
/// coordinate vector of `1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Vec<Vec<Rational>>,
    unit: Vec<Rational>,
    left_regular: Vec<Matrix>,
    right_regular: Vec<Matrix>,
    generators: Vec<usize>,
}

/// First axiom an algebra table violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraViolation {
    ZeroDimensional,
    Shape(String),
    NotInField { entry: String },
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroDimensional => write!(f, "the zero ring is not allowed (dim must be >= 1)"),
            Self::Shape(s) => write!(f, "malformed structure constants: {s}"),
            Self::NotInField { entry } => write!(f, "entry {entry} is not a field element"),
            Self::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            Self::LeftUnit { i } => write!(f, "1 * e_{i} != e_{i}"),
            Self::RightUnit { i } => write!(f, "e_{i} * 1 != e_{i}"),
        }
    }
}

impl Algebra {
    /// Validated constructor; `table[i][j]` is the coordinate vector of `e_i e_j`.
    pub fn new(
        field: Field,
        table: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
    ) -> Result<Self> {
        let a = Self::new_unchecked(field, table, unit)
            .map_err(|v| Error::InvalidAlgebra(v.to_string()))?;
        validate_algebra(&a).map_err(|v| Error::InvalidAlgebra(v.to_string()))?;
        Ok(a)
    }

    /// Shape-checked but otherwise unvalidated constructor.
    pub fn new_unchecked(
        field: Field,
        table: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
    ) -> std::result::Result<Self, AlgebraViolation> {
        let dim = unit.len();
        if dim == 0 {
            return Err(AlgebraViolation::ZeroDimensional);
        }
        if table.len() != dim {
            return Err(AlgebraViolation::Shape(format!(
                "{} rows in the table, expected {dim}",
                table.len()
            )));
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for (i, row) in table.into_iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraViolation::Shape(format!(
                    "row {i} has {} products, expected {dim}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.len() != dim {
                    return Err(AlgebraViolation::Shape(format!(
                        "product ({i}, {j}) has {} coordinates, expected {dim}",
                        v.len()
                    )));
                }
                if let Some(bad) = v.iter().find(|x| !field.contains(x)) {
                    return Err(AlgebraViolation::NotInField {
                        entry: format!("({i}, {j}) = {bad}"),
                    });
                }
                flat.push(v);
            }
        }
        if let Some(bad) = unit.iter().find(|x| !field.contains(x)) {
            return Err(AlgebraViolation::NotInField {
                entry: format!("unit {bad}"),
            });
        }
        let left_regular = (0..dim)
            .map(|i| Matrix::from_fn(field, dim, dim, |r, c| flat[i * dim + c][r].clone()))
            .collect();
        let right_regular = (0..dim)
            .map(|i| Matrix::from_fn(field, dim, dim, |r, c| flat[c * dim + i][r].clone()))
            .collect();
        let mut a = Algebra {
            field,
            dim,
            table: flat,
            unit,
            left_regular,
            right_regular,
            generators: Vec::new(),
        };
        a.generators = a.greedy_generators();
        Ok(a)
    }

    /// Basis indices that generate the algebra together with `1`, chosen
    /// greedily in index order.
    fn greedy_generators(&self) -> Vec<usize> {
        let f = self.field;
        let mut gens = Vec::new();
        let mut sub = self.closure(Subspace::span(&Matrix::row_vector(f, &self.unit)));
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            if sub.contains(&e) {
                continue;
            }
            gens.push(i);
            sub = self.closure(sub.sum(&Subspace::span(&Matrix::row_vector(f, &e))));
            if sub.dim() == self.dim {
                break;
            }
        }
        gens
    }

    fn closure(&self, mut sub: Subspace) -> Subspace {
        loop {
            let mut rows = sub.basis().row_vecs();
            for i in 0..sub.dim() {
                for j in 0..sub.dim() {
                    rows.push(self.mul(sub.vector(i), sub.vector(j)));
                }
            }
            let next = Subspace::span_vectors(self.field, self.dim, &rows);
            if next.dim() == sub.dim() {
                return next;
            }
            sub = next;
        }
    }

    /// Basis indices generating the algebra together with `1`. A linear map
    /// between unital modules that commutes with these commutes with everything.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Builds an algebra from a closure returning integer coordinates of `e_i e_j`.
    pub fn from_int_table(
        field: Field,
        dim: usize,
        unit: &[i64],
        product: impl Fn(usize, usize) -> Vec<i64>,
    ) -> Result<Self> {
        let table = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| product(i, j).into_iter().map(|x| field.from_int(x)).collect())
                    .collect()
            })
            .collect();
        let unit = unit.iter().map(|&x| field.from_int(x)).collect();
        Self::new(field, table, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        Self::from_int_table(field, 1, &[1], |_, _| vec![1]).expect("ground field")
    }

    /// `k^n` with orthogonal idempotent basis.
    pub fn product_of_fields(field: Field, n: usize) -> Self {
        let unit = vec![1; n];
        Self::from_int_table(field, n, &unit, |i, j| {
            let mut v = vec![0; n];
            if i == j {
                v[i] = 1;
            }
            v
        })
        .expect("k^n")
    }

    /// `k[x]/(x^n)` with basis `1, x, .., x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Self {
        let mut unit = vec![0; n];
        unit[0] = 1;
        Self::from_int_table(field, n, &unit, |i, j| {
            let mut v = vec![0; n];
            if i + j < n {
                v[i + j] = 1;
            }
            v
        })
        .expect("k[x]/x^n")
    }

    /// Full matrix algebra `M_n(k)`; basis `E_{ij}` at index `i * n + j`.
    pub fn matrix_algebra(field: Field, n: usize) -> Self {
        let d = n * n;
        let unit: Vec<i64> = (0..d).map(|k| i64::from(k / n == k % n)).collect();
        Self::from_int_table(field, d, &unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let mut v = vec![0; d];
            if j == k {
                v[i * n + l] = 1;
            }
            v
        })
        .expect("M_n")
    }

    /// Upper-triangular `n x n` matrices; basis `E_{ij}` (`i <= j`) in
    /// row-major order.
    pub fn upper_triangular(field: Field, n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
        let d = pairs.len();
        let unit: Vec<i64> = pairs.iter().map(|&(i, j)| i64::from(i == j)).collect();
        Self::from_int_table(field, d, &unit, |a, b| {
            let (i, j) = pairs[a];
            let (k, l) = pairs[b];
            let mut v = vec![0; d];
            if j == k {
                v[index(i, l)] = 1;
            }
            v
        })
        .expect("upper triangular")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Matrix of `y -> e_i y`.
    pub fn left_regular(&self, i: usize) -> &Matrix {
        &self.left_regular[i]
    }

    /// Matrix of `y -> y e_i`.
    pub fn right_regular(&self, i: usize) -> &Matrix {
        &self.right_regular[i]
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult(&self, x: &[Rational]) -> Matrix {
        combine(self.field, self.dim, &self.left_regular, x)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mult(&self, x: &[Rational]) -> Matrix {
        combine(self.field, self.dim, &self.right_regular, x)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.left_mult(x).mul_vec(y)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// The opposite algebra (same basis, reversed products).
    pub fn opposite(&self) -> Algebra {
        let table = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product(j, i).to_vec()).collect())
            .collect();
        Algebra::new_unchecked(self.field, table, self.unit.clone()).expect("opposite of valid")
    }

    /// Structure constants as nested vectors, `[i][j]` = coordinates of `e_i e_j`.
    pub fn table(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product(i, j).to_vec()).collect())
            .collect()
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {})", self.dim, self.field)
    }
}

pub(crate) fn combine(field: Field, n: usize, mats: &[Matrix], coeffs: &[Rational]) -> Matrix {
    assert_eq!(mats.len(), coeffs.len(), "coefficient count");
    let mut out = Matrix::zeros(field, n, n);
    for (m, c) in mats.iter().zip(coeffs) {
        out.add_scaled(c, m);
    }
    out
}

/// Checks associativity on all basis triples and both unit laws. Triples are
/// scanned in lexicographic order and the first failure is reported.
pub fn validate_algebra(a: &Algebra) -> std::result::Result<(), AlgebraViolation> {
    let n = a.dim;
    if n == 0 {
        return Err(AlgebraViolation::ZeroDimensional);
    }
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let lhs = a.right_regular(k).mul_vec(ij);
                let rhs = a.left_regular(i).mul_vec(a.product(j, k));
                if lhs != rhs {
                    return Err(AlgebraViolation::Associativity { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        let e = a.basis_vector(i);
        if a.mul(&a.unit, &e) != e {
            return Err(AlgebraViolation::LeftUnit { i });
        }
        if a.mul(&e, &a.unit) != e {
            return Err(AlgebraViolation::RightUnit { i });
        }
    }
    Ok(())
}

/// A unital algebra homomorphism `source -> target`; `matrix` is
/// `target.dim() x source.dim()`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingMap {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingMapViolation {
    FieldMismatch,
    Shape { rows: usize, cols: usize },
    Unit,
    Product { i: usize, j: usize },
}

impl fmt::Display for RingMapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FieldMismatch => write!(f, "source and target are over different fields"),
            Self::Shape { rows, cols } => write!(f, "matrix has shape {rows}x{cols}"),
            Self::Unit => write!(f, "unit is not mapped to unit"),
            Self::Product { i, j } => write!(f, "f(e_{i} e_{j}) != f(e_{i}) f(e_{j})"),
        }
    }
}

impl RingMap {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self> {
        let f = Self::new_unchecked(source, target, matrix);
        validate_ring_map(&f).map_err(|v| Error::InvalidRingMap(v.to_string()))?;
        Ok(f)
    }

    pub fn new_unchecked(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Self {
        RingMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let m = Matrix::identity(a.field(), a.dim());
        RingMap {
            source: a.clone(),
            target: a,
            matrix: m,
        }
    }

    /// The structure map `k -> B`, `1 -> 1_B`.
    pub fn unit_map(b: Arc<Algebra>) -> Self {
        let field = b.field();
        let k = Arc::new(Algebra::ground(field));
        let m = Matrix::column(field, b.unit());
        RingMap {
            source: k,
            target: b,
            matrix: m,
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x)
    }

    /// `other` after `self`: `source -> self.target == other.source -> other.target`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        if !same_algebra(&self.target, &other.source) {
            return Err(Error::AlgebraMismatch(
                "composition: target of the first map is not the source of the second".into(),
            ));
        }
        Ok(RingMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingMap(dim {} -> dim {})",
            self.source.dim(),
            self.target.dim()
        )
    }
}

pub fn validate_ring_map(f: &RingMap) -> std::result::Result<(), RingMapViolation> {
    let (s, t) = (&f.source, &f.target);
    if s.field() != t.field() || f.matrix.field() != s.field() {
        return Err(RingMapViolation::FieldMismatch);
    }
    if f.matrix.shape() != (t.dim(), s.dim()) {
        return Err(RingMapViolation::Shape {
            rows: f.matrix.rows(),
            cols: f.matrix.cols(),
        });
    }
    if f.apply(s.unit()) != t.unit() {
        return Err(RingMapViolation::Unit);
    }
    let images: Vec<Vec<Rational>> = (0..s.dim()).map(|i| f.matrix.col(i)).collect();
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            if f.apply(s.product(i, j)) != t.mul(&images[i], &images[j]) {
                return Err(RingMapViolation::Product { i, j });
            }
        }
    }
    Ok(())
}

/// Pointer or structural equality of algebras.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `m_B: B (x)_A B -> B` for an algebra map `A -> B`, as a map of
/// `B`-bimodules, together with the tensor product it is defined on.
pub fn multiplication_map(b: &Arc<Algebra>, over: &RingMap) -> Result<(TensorProduct, BimoduleMap)> {
    validate_ring_map(over).map_err(|v| Error::InvalidRingMap(v.to_string()))?;
    if !same_algebra(over.target(), b) {
        return Err(Error::AlgebraMismatch(
            "multiplication map: ring map does not land in the algebra".into(),
        ));
    }
    let b_ba = Bimodule::regular(b.clone()).restrict_right(over)?;
    let b_ab = Bimodule::regular(b.clone()).restrict_left(over)?;
    let tensor = tensor_over(&b_ba, &b_ab)?;
    let field = b.field();
    let n = b.dim();
    // e_i (x) e_j -> e_i e_j on the plain tensor basis.
    let plain = Matrix::from_fn(field, n, n * n, |r, c| b.product(c / n, c % n)[r].clone());
    let matrix = plain.mul(tensor.section());
    let map = BimoduleMap::new(tensor.module().clone(), Bimodule::regular(b.clone()), matrix)?;
    Ok((tensor, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn standard_algebras_validate() {
        for a in [
            Algebra::ground(q()),
            Algebra::product_of_fields(q(), 2),
            Algebra::truncated_polynomial(q(), 2),
            Algebra::upper_triangular(q(), 2),
            Algebra::matrix_algebra(q(), 2),
        ] {
            assert_eq!(validate_algebra(&a), Ok(()));
        }
        assert_eq!(Algebra::upper_triangular(q(), 2).dim(), 3);
    }

    #[test]
    fn generators_are_small() {
        assert!(Algebra::ground(q()).generators().is_empty());
        assert_eq!(Algebra::truncated_polynomial(q(), 2).generators(), &[1]);
        assert_eq!(Algebra::product_of_fields(q(), 2).generators(), &[0]);
        assert_eq!(Algebra::matrix_algebra(q(), 2).generators().len(), 3);
    }

    #[test]
    fn dual_numbers_hand_table() {
        // 1*1 = 1, 1*x = x*1 = x, x*x = 0
        let a = Algebra::from_int_table(q(), 2, &[1, 0], |i, j| match (i, j) {
            (0, 0) => vec![1, 0],
            (0, 1) | (1, 0) => vec![0, 1],
            _ => vec![0, 0],
        });
        assert!(a.is_ok());
    }

    #[test]
    fn corrupted_dual_numbers_are_rejected() {
        // x*x = 1 and 1*x corrupted to 0: a violation is found at or before (x, x, x).
        let table = |i: usize, j: usize| -> Vec<Rational> {
            let v: [i64; 2] = match (i, j) {
                (0, 0) => [1, 0],
                (0, 1) => [0, 0],
                (1, 0) => [0, 1],
                _ => [1, 0],
            };
            v.iter().map(|&x| Rational::from_int(x)).collect()
        };
        let t = (0..2).map(|i| (0..2).map(|j| table(i, j)).collect()).collect();
        let a = Algebra::new_unchecked(q(), t, vec![Rational::one(), Rational::zero()]).unwrap();
        match validate_algebra(&a) {
            Err(AlgebraViolation::Associativity { i, j, k }) => {
                assert!((i, j, k) <= (1, 1, 1));
            }
            other => panic!("expected associativity violation, got {other:?}"),
        }
    }

    #[test]
    fn zero_ring_and_shape_errors() {
        assert_eq!(
            Algebra::new_unchecked(q(), vec![], vec![]).unwrap_err(),
            AlgebraViolation::ZeroDimensional
        );
        let bad = vec![vec![vec![Rational::one(), Rational::zero()]]];
        assert!(matches!(
            Algebra::new_unchecked(q(), bad, vec![Rational::one()]),
            Err(AlgebraViolation::Shape(_))
        ));
    }

    #[test]
    fn ring_map_examples() {
        let b = Arc::new(Algebra::truncated_polynomial(q(), 2));
        assert_eq!(validate_ring_map(&RingMap::identity(b.clone())), Ok(()));

        let t = Arc::new(Algebra::upper_triangular(q(), 2));
        assert_eq!(validate_ring_map(&RingMap::unit_map(t)), Ok(()));

        let kk = Arc::new(Algebra::product_of_fields(q(), 2));
        let k = Arc::new(Algebra::ground(q()));
        let proj = RingMap::new(kk.clone(), k.clone(), Matrix::from_ints(q(), &[&[1, 0]]));
        assert!(proj.is_ok());
        let not_unital = RingMap::new_unchecked(kk, k, Matrix::from_ints(q(), &[&[1, 1]]));
        assert!(validate_ring_map(&not_unital).is_err());
    }

    #[test]
    fn composition_stays_valid() {
        let b = Arc::new(Algebra::upper_triangular(q(), 2));
        let u = RingMap::unit_map(b.clone());
        let c = u.then(&RingMap::identity(b)).unwrap();
        assert_eq!(validate_ring_map(&c), Ok(()));
    }

    #[test]
    fn multiplication_map_examples() {
        let k = Arc::new(Algebra::ground(q()));
        let (t, m) = multiplication_map(&k, &RingMap::identity(k.clone())).unwrap();
        assert_eq!(t.module().dim(), 1);
        assert!(m.matrix().is_identity());

        let b = Arc::new(Algebra::truncated_polynomial(q(), 2));
        let (t, m) = multiplication_map(&b, &RingMap::unit_map(b.clone())).unwrap();
        assert_eq!(t.module().dim(), 4);
        assert_eq!(m.matrix().rank(), 2);
        assert_eq!(m.matrix().kernel().dim(), 2);
    }
}
