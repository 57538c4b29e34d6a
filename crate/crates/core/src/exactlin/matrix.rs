use std::fmt;

use super::field::Field;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from explicit rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Self::from_vec(field, n, cols, data)
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| field.from_int(x))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// `n x 1` column.
    pub fn column(field: Field, v: &[Rational]) -> Self {
        Matrix {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// `1 x n` row.
    pub fn row_vector(field: Field, v: &[Rational]) -> Self {
        Matrix {
            field,
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Rational> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    fn check_same_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrices over different fields");
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_same_field(other);
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        let slot = &mut out.data[base + j];
                        *slot = f.add(slot, &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect()
    }

    /// `v^T * self`
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.rows, v.len(), "vector length mismatch");
        let f = self.field;
        let mut out = vec![Rational::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in self.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] = f.add(&out[j], &f.mul(a, b));
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&Rational, &Rational) -> Rational) -> Matrix {
        self.check_same_field(other);
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.neg(a)).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Rational, other: &Matrix) {
        self.check_same_field(other);
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        if s.is_zero() {
            return;
        }
        let f = self.field;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = f.add(a, &f.mul(s, b));
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; row index `(i, k) -> i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.check_same_field(other);
        let f = self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack width mismatch");
            assert_eq!(b.field, field, "vstack field mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack height mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j).clone()
        })
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let cols = self.cols;
        let mut rows: Vec<Vec<Rational>> = self
            .row_vecs()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let nonzero = rows.len();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == nonzero {
                break;
            }
            let Some(r) = (prow..nonzero).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(r, prow);
            let inv = f.inv(&rows[prow][c]);
            if !inv.is_one() {
                for x in rows[prow][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = f.mul(x, &inv);
                    }
                }
            }
            let support: Vec<usize> = (c..cols).filter(|&j| !rows[prow][j].is_zero()).collect();
            let pivot_row = std::mem::take(&mut rows[prow]);
            for (r, row) in rows.iter_mut().enumerate() {
                if r == prow || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for &j in &support {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
                }
            }
            rows[prow] = pivot_row;
            pivots.push(c);
            prow += 1;
        }
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in rows.into_iter().take(prow) {
            data.extend(r);
        }
        data.resize(self.rows * cols, Rational::zero());
        (
            Matrix {
                field: f,
                rows: self.rows,
                cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Column space, as a subspace of `F^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.transpose())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Some(r.select_cols(&right))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Subspace {
    let f = r.field;
    let n = r.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut basis = Matrix::zeros(f, free.len(), n);
    for (k, &j) in free.iter().enumerate() {
        basis.set(k, j, Rational::one());
        for (row, &p) in pivots.iter().enumerate() {
            let x = r.get(row, j);
            if !x.is_zero() {
                basis.set(k, p, f.neg(x));
            }
        }
    }
    Subspace {
        ambient: n,
        basis,
        pivots: free,
    }
}

/// A linear subspace of `F^ambient`, stored by a basis whose restriction to the
/// `pivots` coordinates is the identity matrix. Coordinates of a member vector
/// are therefore read off at the pivot positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn from_parts(ambient: usize, basis: Matrix, pivots: Vec<usize>) -> Self {
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row span of `rows`, in reduced echelon basis.
    pub fn span(rows: &Matrix) -> Self {
        let (r, pivots) = rows.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            ambient: rows.cols(),
            basis: r.select_rows(&keep),
            pivots,
        }
    }

    pub fn span_vectors(field: Field, ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let m = Matrix::from_rows(field, ambient, vectors.to_vec()).expect("vector lengths");
        Self::span(&m)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Basis vectors as rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vector(&self, i: usize) -> &[Rational] {
        self.basis.row(i)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is not in the span.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        (back == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        self.basis.vec_mul(coeffs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.vector(i)))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.is_subspace_of(other)
    }

    /// Matrix whose columns are the basis vectors (`ambient x dim`).
    pub fn embedding(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Left inverse of [`Self::embedding`]: picks the pivot coordinates.
    pub fn coordinate_map(&self) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, Rational::one());
        }
        m
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        Subspace::span(&Matrix::vstack(
            f,
            self.ambient,
            &[&self.basis, &other.basis],
        ))
    }
}

/// `rref` as a free function.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    m.kernel()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub homogeneous: Subspace,
}

/// Solves `constraints * x = rhs`. `Ok(None)` means the system is infeasible.
pub fn solve_affine(constraints: &Matrix, rhs: &[Rational]) -> Result<Option<AffineSolution>> {
    if rhs.len() != constraints.rows() {
        return Err(Error::DimensionMismatch(format!(
            "rhs has {} entries for {} constraints",
            rhs.len(),
            constraints.rows()
        )));
    }
    let f = constraints.field();
    let n = constraints.cols();
    let aug = Matrix::hstack(
        f,
        constraints.rows(),
        &[constraints, &Matrix::column(f, rhs)],
    );
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = r.get(row, n).clone();
    }
    let left: Vec<usize> = (0..n).collect();
    let homogeneous = kernel_from_rref(&r.select_cols(&left), &pivots);
    Ok(Some(AffineSolution {
        particular,
        homogeneous,
    }))
}

/// A functional `y` with `y^T constraints = 0` and `y . rhs = 1`; it exists
/// exactly when `constraints * x = rhs` has no solution.
pub fn infeasibility_certificate(constraints: &Matrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let f = constraints.field();
    let m = constraints.rows();
    let stacked = Matrix::vstack(
        f,
        m,
        &[&constraints.transpose(), &Matrix::row_vector(f, rhs)],
    );
    let mut target = vec![Rational::zero(); constraints.cols() + 1];
    target[constraints.cols()] = Rational::one();
    solve_affine(&stacked, &target)
        .expect("shapes agree")
        .map(|s| s.particular)
}

/// Quotient `F^n / relations` with a projection and a deterministic section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    pub dim: usize,
    /// `dim x ambient`; its kernel is the relation space.
    pub projection: Matrix,
    /// `ambient x dim`; unit vectors at the non-pivot coordinates of the
    /// relation space's reduced echelon basis.
    pub section: Matrix,
    pub relations: Subspace,
}

pub fn quotient_space(ambient_dim: usize, relations: &Subspace) -> Result<QuotientSpace> {
    if relations.ambient_dim() != ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "relations live in dimension {}, ambient is {ambient_dim}",
            relations.ambient_dim()
        )));
    }
    let f = relations.field();
    let canon = Subspace::span(relations.basis());
    let mut pivot_row = vec![None; ambient_dim];
    for (row, &p) in canon.pivots().iter().enumerate() {
        pivot_row[p] = Some(row);
    }
    let kept: Vec<usize> = (0..ambient_dim).filter(|&j| pivot_row[j].is_none()).collect();
    let q = kept.len();
    let mut position = vec![usize::MAX; ambient_dim];
    for (k, &j) in kept.iter().enumerate() {
        position[j] = k;
    }
    let mut projection = Matrix::zeros(f, q, ambient_dim);
    let mut section = Matrix::zeros(f, ambient_dim, q);
    for j in 0..ambient_dim {
        match pivot_row[j] {
            None => {
                projection.set(position[j], j, Rational::one());
                section.set(j, position[j], Rational::one());
            }
            Some(row) => {
                // e_j is congruent to e_j - r, which is supported off the pivots.
                for (k, &kj) in kept.iter().enumerate() {
                    let x = canon.vector(row)[kj].clone();
                    if !x.is_zero() {
                        projection.set(k, j, f.neg(&x));
                    }
                }
            }
        }
    }
    Ok(QuotientSpace {
        dim: q,
        projection,
        section,
        relations: canon,
    })
}
