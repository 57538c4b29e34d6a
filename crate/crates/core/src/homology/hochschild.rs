use std::sync::Arc;

use super::bar::BarResolution;
use super::complex::{cohomology, CohomologyResult};
use crate::bimodule::{bimodule_hom, tensor_over_capped, Bimodule};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace};
use crate::structures::{same_algebra, validate_ring_map, RingMap};

/// Flattened map spaces `K^n` and coboundaries `delta^n: K^n -> K^{n+1}` in
/// coordinates.
#[derive(Clone, Debug)]
pub struct Cochains {
    pub spaces: Vec<Subspace>,
    pub deltas: Vec<Matrix>,
}

impl Cochains {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }
}

/// Matrix of `f -> f o post`-style maps between flattened map spaces: each
/// basis vector of `from` is reshaped to `rows x from_cols`, sent through
/// `op`, and expressed in `to`.
pub(crate) fn induced_map(
    from: &Subspace,
    to: &Subspace,
    rows: usize,
    from_cols: usize,
    mut op: impl FnMut(&Matrix) -> Matrix,
) -> Result<Matrix> {
    let f = from.field();
    let mut out = Matrix::zeros(f, to.dim(), from.dim());
    for k in 0..from.dim() {
        let g = Matrix::from_vec(f, rows, from_cols, from.vector(k).to_vec())?;
        let image = op(&g);
        let c = to.coords(image.data()).ok_or_else(|| {
            Error::Inconsistent("coboundary leaves the space of bimodule maps".into())
        })?;
        for (r, x) in c.into_iter().enumerate() {
            out.set(r, k, x);
        }
    }
    Ok(out)
}

fn check_coefficients(m: &Bimodule, n: &Bimodule) -> Result<()> {
    let b = m.left_algebra();
    if !same_algebra(n.left_algebra(), b) || !same_algebra(n.right_algebra(), b) {
        return Err(Error::AlgebraMismatch(
            "coefficients must be a bimodule over the left algebra of M".into(),
        ));
    }
    Ok(())
}

/// `K^n = Hom_{B-B}(P_n, N)` for `n <= top`, `delta^n = - o d_{n+1}`.
pub fn m_cochains(m: &Bimodule, n: &Bimodule, top: usize, cap: usize) -> Result<(Cochains, BarResolution)> {
    check_coefficients(m, n)?;
    let res = super::bar::bar_resolution(m, top + 1, cap)?;
    let objects = &res.complex.objects;
    let spaces: Vec<Subspace> =
        (0..=top).map(|k| bimodule_hom(&objects[k], n)).collect::<Result<_>>()?;
    let mut deltas = Vec::with_capacity(top);
    for k in 0..top {
        let d = res.complex.differentials[k + 1].matrix();
        deltas.push(induced_map(&spaces[k], &spaces[k + 1], n.dim(), objects[k].dim(), |g| {
            g.mul(d)
        })?);
    }
    Ok((Cochains { spaces, deltas }, res))
}

/// `H^n_M(B, N)` for `0 <= n <= nmax`, from the non-augmented bar resolution
/// (so `H^0` is the `B`-centralizer of `N`).
pub fn m_hochschild(m: &Bimodule, n: &Bimodule, nmax: usize, cap: usize) -> Result<CohomologyResult> {
    let (c, _) = m_cochains(m, n, nmax + 1, cap)?;
    cohomology(&c.deltas)
}

/// The `A`-relative Hochschild complex of `f: A -> S` with coefficients `W`.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub ring_map: RingMap,
    /// `W` as an `A`-bimodule.
    pub coefficients: Bimodule,
    /// `T_n = S^{(x)_A n}` as `A`-bimodules (`T_0 = A`).
    pub powers: Vec<Bimodule>,
    /// `lower[n]: S^{(x)_k n} -> T_n` (for `n = 0` the unit `k -> A`).
    pub lower: Vec<Matrix>,
    /// `lift[n]: T_n -> S^{(x)_k n}`, a right inverse of `lower[n]` for `n >= 1`.
    pub lift: Vec<Matrix>,
    pub cochains: Cochains,
}

/// `C^n = Hom_{A-A}(S^{(x)_A n}, W)` for `n <= top` with the Hochschild
/// coboundaries `b^n`.
pub fn rel_cochains(f: &RingMap, w: &Bimodule, top: usize, cap: usize) -> Result<RelativeComplex> {
    validate_ring_map(f).map_err(|v| Error::InvalidRingMap(v.to_string()))?;
    let s = f.target();
    if !same_algebra(w.left_algebra(), s) || !same_algebra(w.right_algebra(), s) {
        return Err(Error::AlgebraMismatch(
            "relative Hochschild coefficients must be a bimodule over the target ring".into(),
        ));
    }
    let field = s.field();
    let sd = s.dim();
    let a = f.source();
    let s_reg = Bimodule::regular(s.clone());
    let s_aa = s_reg.restrict_left(f)?.restrict_right(f)?;
    let w_aa = w.restrict_left(f)?.restrict_right(f)?;

    let mut powers = vec![Bimodule::regular(a.clone()), s_aa.clone()];
    let mut lower = vec![
        Matrix::column(field, a.unit()),
        Matrix::identity(field, sd),
    ];
    let mut lift = vec![Matrix::zeros(field, 1, a.dim()), Matrix::identity(field, sd)];
    let id_s = Matrix::identity(field, sd);
    for n in 2..=top + 1 {
        let plain = sd.checked_pow(n as u32).unwrap_or(usize::MAX);
        if plain > cap {
            return Err(Error::DimensionCap {
                what: format!("S^(x){n}"),
                dim: plain,
                cap,
            });
        }
        let t = tensor_over_capped(&powers[n - 1], &s_aa, cap, &format!("S^(x)_A {n}"))?;
        lower.push(t.projection().mul(&lower[n - 1].kron(&id_s)));
        lift.push(lift[n - 1].kron(&id_s).mul(t.section()));
        powers.push(t.module().clone());
    }

    let spaces: Vec<Subspace> = (0..=top)
        .map(|n| bimodule_hom(&powers[n], &w_aa))
        .collect::<Result<_>>()?;
    let mult = Matrix::from_fn(field, sd, sd * sd, |k, c| s.product(c / sd, c % sd)[k].clone());
    let mut deltas = Vec::with_capacity(top);
    for n in 0..top {
        let lower_n = &lower[n];
        let lift_next = &lift[n + 1];
        let lower_next = &lower[n + 1];
        let mut failure = None;
        let delta = induced_map(&spaces[n], &spaces[n + 1], w.dim(), powers[n].dim(), |g| {
            let plain = hochschild_plain(w, &mult, &g.mul(lower_n), sd, n);
            if plain.mul(lift_next).mul(lower_next) != plain {
                failure = Some(n);
            }
            plain.mul(lift_next)
        })?;
        if let Some(n) = failure {
            return Err(Error::Inconsistent(format!(
                "b^{n} does not descend to the tensor power over A"
            )));
        }
        deltas.push(delta);
    }
    Ok(RelativeComplex {
        ring_map: f.clone(),
        coefficients: w_aa,
        powers,
        lower,
        lift,
        cochains: Cochains { spaces, deltas },
    })
}

/// `b^n` applied to `G: S^{(x)n} -> W` on plain tensors, big-endian indexing.
pub(crate) fn hochschild_plain(w: &Bimodule, mult: &Matrix, g: &Matrix, sd: usize, n: usize) -> Matrix {
    let field = g.field();
    let width = sd.pow(n as u32);
    let dw = w.dim();
    let mut out = Matrix::zeros(field, dw, width * sd);
    // s_0 . G(s_1, .., s_n)
    for s0 in 0..sd {
        let block = w.left_action(s0).mul(g);
        for r in 0..width {
            for row in 0..dw {
                out.set(row, s0 * width + r, block.get(row, r).clone());
            }
        }
    }
    // sum_i (-1)^i G(.., s_{i-1} s_i, ..)
    for i in 1..=n {
        let left = Matrix::identity(field, sd.pow((i - 1) as u32));
        let right = Matrix::identity(field, sd.pow((n - i) as u32));
        let term = g.mul(&left.kron(mult).kron(&right));
        out = if i % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    // (-1)^{n+1} G(s_0, .., s_{n-1}) . s_n
    let mut last = Matrix::zeros(field, dw, width * sd);
    for sn in 0..sd {
        let block = w.right_action(sn).mul(g);
        for r in 0..width {
            for row in 0..dw {
                last.set(row, r * sd + sn, block.get(row, r).clone());
            }
        }
    }
    if n % 2 == 0 {
        out.sub(&last)
    } else {
        out.add(&last)
    }
}

/// `H^n(S|A, W)` for `0 <= n <= nmax`.
pub fn rel_hochschild(f: &RingMap, w: &Bimodule, nmax: usize, cap: usize) -> Result<CohomologyResult> {
    let c = rel_cochains(f, w, nmax + 1, cap)?;
    cohomology(&c.cochains.deltas)
}

/// `W` over itself as coefficients: the regular bimodule of the target.
pub fn regular_coefficients(f: &RingMap) -> Bimodule {
    Bimodule::regular(Arc::clone(f.target()))
}
