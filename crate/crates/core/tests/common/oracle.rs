//! Brute-force classical computations over `BigRational`, written against
//! structure constants only. Shares no code with the library beyond reading
//! the multiplication table.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use relhoch::Algebra;

pub type Q = BigRational;
/// Row-major dense matrix.
pub type Mat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Q::zero(); c]; r]
}

/// Row-reduces in place and returns pivot columns.
pub fn reduce(m: &mut Mat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat, cols: usize) -> usize {
    let mut w = m.clone();
    reduce(&mut w, cols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(m: &Mat, cols: usize) -> Vec<Vec<Q>> {
    let mut w = m.clone();
    let pivots = reduce(&mut w, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -w[row][f].clone();
            }
            v
        })
        .collect()
}

/// Whether `m x = rhs` has a solution.
pub fn feasible(m: &Mat, cols: usize, rhs: &[Q]) -> bool {
    let aug: Mat = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    rank(m, cols) == rank(&aug, cols + 1)
}

fn mat_vec(m: &Mat, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Structure constants `c[i][j][k]` of `b_i b_j = sum_k c[i][j][k] b_k`.
pub struct Alg {
    pub d: usize,
    pub c: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
}

impl Alg {
    pub fn from(a: &Algebra) -> Self {
        let d = a.dim();
        let c = (0..d)
            .map(|i| (0..d).map(|j| a.product(i, j).iter().map(Q::from).collect()).collect())
            .collect();
        Alg {
            d,
            c,
            unit: a.unit().iter().map(Q::from).collect(),
        }
    }
}

/// A bimodule over `Alg`, given by basis actions on column vectors.
pub struct Bim {
    pub dim: usize,
    /// `left[i] v = b_i v`.
    pub left: Vec<Mat>,
    /// `right[i] v = v b_i`.
    pub right: Vec<Mat>,
}

/// `B^{(x) n}` with outer actions, big-endian indices.
pub fn tensor_power(a: &Alg, n: usize) -> Bim {
    let d = a.d;
    let dim = d.pow(n as u32);
    let block = dim / d;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..d {
        let mut l = zeros(dim, dim);
        let mut r = zeros(dim, dim);
        for t in 0..dim {
            let (first, rest) = (t / block, t % block);
            for k in 0..d {
                if !a.c[i][first][k].is_zero() {
                    l[k * block + rest][t] += &a.c[i][first][k];
                }
            }
            let (init, last) = (t / d, t % d);
            for k in 0..d {
                if !a.c[last][i][k].is_zero() {
                    r[init * d + k][t] += &a.c[last][i][k];
                }
            }
        }
        left.push(l);
        right.push(r);
    }
    Bim { dim, left, right }
}

pub fn regular(a: &Alg) -> Bim {
    tensor_power(a, 1)
}

/// `b'(x_0 (x) .. (x) x_n) = sum_i (-1)^i x_0 (x) .. x_i x_{i+1} .. (x) x_n`,
/// from `B^{(x) n+1}` to `B^{(x) n}`.
pub fn bar_prime(a: &Alg, n: usize) -> Mat {
    let d = a.d;
    let src = d.pow(n as u32 + 1);
    let tgt = d.pow(n as u32);
    let mut m = zeros(tgt, src);
    for t in 0..src {
        let digits = to_digits(t, d, n + 1);
        for i in 0..n {
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            for k in 0..d {
                let coef = &a.c[digits[i]][digits[i + 1]][k];
                if coef.is_zero() {
                    continue;
                }
                let mut out: Vec<usize> = digits[..i].to_vec();
                out.push(k);
                out.extend_from_slice(&digits[i + 2..]);
                m[from_digits(&out, d)][t] += &sign * coef;
            }
        }
    }
    m
}

/// `Omega^n = Ker(b': B^{(x) n+1} -> B^{(x) n})` for `n >= 1`.
pub fn syzygy(a: &Alg, n: usize) -> Bim {
    let big = tensor_power(a, n + 1);
    let basis = kernel(&bar_prime(a, n), big.dim);
    restrict(&big, &basis)
}

/// Restriction of the actions to an invariant subspace with the given basis.
pub fn restrict(m: &Bim, basis: &[Vec<Q>]) -> Bim {
    let k = basis.len();
    // columns of the basis as a dim x k system
    let sys: Mat = (0..m.dim).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    let coords = |v: Vec<Q>| -> Vec<Q> {
        let aug: Mat = sys
            .iter()
            .zip(&v)
            .map(|(row, x)| {
                let mut r = row.clone();
                r.push(x.clone());
                r
            })
            .collect();
        let mut w = aug;
        let pivots = reduce(&mut w, k + 1);
        assert!(!pivots.contains(&k), "subspace is not invariant");
        let mut out = vec![Q::zero(); k];
        for (row, &p) in pivots.iter().enumerate() {
            out[p] = w[row][k].clone();
        }
        out
    };
    let act = |g: &Mat| -> Mat {
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| coords(mat_vec(g, b))).collect();
        (0..k).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    };
    Bim {
        dim: k,
        left: m.left.iter().map(act).collect(),
        right: m.right.iter().map(act).collect(),
    }
}

fn to_digits(mut t: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = t % base;
        t /= base;
    }
    out
}

fn from_digits(ds: &[usize], base: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * base + x)
}

/// Classical Hochschild coboundary `C^n(B, N) -> C^{n+1}(B, N)`, where
/// cochains are maps `B^{(x) n} -> N` stored as `f[tuple * dimN + row]`.
pub fn hochschild_coboundary(a: &Alg, nm: &Bim, n: usize) -> Mat {
    let d = a.d;
    let dn = nm.dim;
    let src_tuples = d.pow(n as u32);
    let tgt_tuples = d.pow(n as u32 + 1);
    let mut m = zeros(tgt_tuples * dn, src_tuples * dn);
    for t in 0..tgt_tuples {
        let x = to_digits(t, d, n + 1);
        // x_0 f(x_1..x_n)
        let rest = from_digits(&x[1..], d);
        for row in 0..dn {
            for col in 0..dn {
                let v = &nm.left[x[0]][row][col];
                if !v.is_zero() {
                    m[t * dn + row][rest * dn + col] += v;
                }
            }
        }
        // (-1)^i f(.., x_{i-1} x_i, ..)
        for i in 1..=n {
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            for k in 0..d {
                let coef = &a.c[x[i - 1]][x[i]][k];
                if coef.is_zero() {
                    continue;
                }
                let mut y: Vec<usize> = x[..i - 1].to_vec();
                y.push(k);
                y.extend_from_slice(&x[i + 1..]);
                let s = from_digits(&y, d);
                for row in 0..dn {
                    m[t * dn + row][s * dn + row] += &sign * coef;
                }
            }
        }
        // (-1)^{n+1} f(x_0..x_{n-1}) x_n
        let sign = if (n + 1) % 2 == 0 { Q::one() } else { -Q::one() };
        let init = from_digits(&x[..n], d);
        for row in 0..dn {
            for col in 0..dn {
                let v = &nm.right[x[n]][row][col];
                if !v.is_zero() {
                    m[t * dn + row][init * dn + col] += &sign * v;
                }
            }
        }
    }
    m
}

/// `dim HH^n(B, N)` for `n = 0..=nmax`.
pub fn hochschild_dims(a: &Alg, nm: &Bim, nmax: usize) -> Vec<usize> {
    let d = a.d;
    let ranks: Vec<usize> = (0..=nmax)
        .map(|n| hochschild_coboundary(a, nm, n))
        .enumerate()
        .map(|(n, m)| rank(&m, d.pow(n as u32) * nm.dim))
        .collect();
    (0..=nmax)
        .map(|n| {
            let cn = d.pow(n as u32) * nm.dim;
            cn - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }
        })
        .collect()
}

/// Separability of `B` over the ground field: an element `e` of `B (x) B`
/// with `b e = e b` for all `b` and `m(e) = 1`.
pub fn separable_over_ground(a: &Alg) -> bool {
    let d = a.d;
    let bb = tensor_power(a, 2);
    let mut rows: Mat = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..d {
        for r in 0..d * d {
            rows.push((0..d * d).map(|c| &bb.left[i][r][c] - &bb.right[i][r][c]).collect());
            rhs.push(Q::zero());
        }
    }
    let mult = bar_prime(a, 1);
    for k in 0..d {
        rows.push(mult[k].clone());
        rhs.push(a.unit[k].clone());
    }
    feasible(&rows, d * d, &rhs)
}

/// `Omega^n` is projective iff `0 -> Omega^{n+1} -> B^{(x) n+2} -> Omega^n -> 0`
/// splits, iff `HH^{n+1}(B, Omega^{n+1}) = 0`. Returns the least such
/// `n <= nmax`.
pub fn hochschild_dimension_upto(a: &Alg, nmax: usize) -> Option<usize> {
    (0..=nmax).find(|&n| {
        let omega = syzygy(a, n + 1);
        hochschild_dims(a, &omega, n + 1)[n + 1] == 0
    })
}

/// `dim {x in N : b x = x b for all b}`.
pub fn invariants_dim(nm: &Bim) -> usize {
    let mut rows: Mat = Vec::new();
    for (l, r) in nm.left.iter().zip(&nm.right) {
        for i in 0..nm.dim {
            rows.push((0..nm.dim).map(|j| &l[i][j] - &r[i][j]).collect());
        }
    }
    nm.dim - rank(&rows, nm.dim)
}
