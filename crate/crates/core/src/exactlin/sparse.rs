//! Row-sparse elimination for large structured systems such as the
//! intertwining equations of a Hom space. Results are canonical, so they
//! agree exactly with the dense routines.

use std::collections::BTreeMap;

use super::{Field, Matrix, Rational, Subspace};

/// Sorted `(column, value)` pairs with nonzero values.
pub type SparseRow = Vec<(usize, Rational)>;

/// `a - factor * b`.
fn axpy(f: Field, a: &[(usize, Rational)], factor: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.neg(&f.mul(factor, &b[j].1))));
            j += 1;
        } else {
            let x = f.sub(&a[i].1, &f.mul(factor, &b[j].1));
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of the span of `rows`, keyed by pivot column.
fn rref(f: Field, rows: impl IntoIterator<Item = SparseRow>) -> BTreeMap<usize, SparseRow> {
    let mut echelon: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        let mut start = 0;
        while let Some(k) = (start..row.len()).find(|&k| echelon.contains_key(&row[k].0)) {
            let (c, factor) = row[k].clone();
            row = axpy(f, &row, &factor, &echelon[&c]);
            start = k;
        }
        if let Some((c, lead)) = row.first().cloned() {
            let inv = f.inv(&lead);
            if !inv.is_one() {
                for e in row.iter_mut() {
                    e.1 = f.mul(&e.1, &inv);
                }
            }
            echelon.insert(c, row);
        }
    }
    // back substitution, from the last pivot up
    let pivots: Vec<usize> = echelon.keys().rev().copied().collect();
    for p in pivots {
        let mut row = echelon.remove(&p).expect("pivot row");
        let targets: Vec<(usize, Rational)> = row[1..]
            .iter()
            .filter(|(c, _)| echelon.contains_key(c))
            .cloned()
            .collect();
        for (c, _) in targets {
            let Ok(k) = row.binary_search_by_key(&c, |e| e.0) else {
                continue;
            };
            let factor = row[k].1.clone();
            row = axpy(f, &row, &factor, &echelon[&c]);
        }
        echelon.insert(p, row);
    }
    echelon
}

fn to_subspace(f: Field, ambient: usize, rows: Vec<SparseRow>, pivots: Vec<usize>) -> Subspace {
    let mut basis = Matrix::zeros(f, rows.len(), ambient);
    for (i, row) in rows.into_iter().enumerate() {
        for (c, x) in row {
            basis.set(i, c, x);
        }
    }
    Subspace::from_parts(ambient, basis, pivots)
}

/// Row span of sparse rows in `F^ambient`.
pub fn sparse_span(f: Field, ambient: usize, rows: impl IntoIterator<Item = SparseRow>) -> Subspace {
    let r = rref(f, rows);
    let pivots = r.keys().copied().collect();
    to_subspace(f, ambient, r.into_values().collect(), pivots)
}

/// `{x : r . x = 0 for every row r}`, in reduced echelon basis.
pub fn sparse_kernel(f: Field, ambient: usize, rows: impl IntoIterator<Item = SparseRow>) -> Subspace {
    let r = rref(f, rows);
    let free: Vec<usize> = (0..ambient).filter(|j| !r.contains_key(j)).collect();
    let mut vectors: Vec<SparseRow> = free.iter().map(|&j| vec![(j, Rational::one())]).collect();
    let slot: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    for (&p, row) in &r {
        for (c, x) in &row[1..] {
            vectors[slot[c]].push((p, f.neg(x)));
        }
    }
    for v in vectors.iter_mut() {
        v.sort_by_key(|e| e.0);
    }
    sparse_span(f, ambient, vectors)
}
