use std::sync::Arc;

use super::bar::BarConstruction;
use super::hochschild::{m_cochains, rel_cochains};
use crate::bimodule::{
    dual_basis_for, endomorphism_ring, hom_left, is_fg_projective_left, is_generator,
    tensor_over_capped, Bimodule, Endomorphisms, HomSpace, TensorProduct,
};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Rational};

/// Per-degree outcome of the comparison map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiDegree {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub is_isomorphism: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub degrees: Vec<PhiDegree>,
    /// `Phi_0(g_nu o ev) = sum_k f_k (x) nu (x) x_k` for every `nu` in `N^B`.
    pub base_square: bool,
    /// `(n, Phi_n delta^{n-1} = b^{n-1} Phi_{n-1})` for `1 <= n <= nmax`.
    pub squares: Vec<(usize, bool)>,
    /// Dimension of `W = *M (x)_B N (x)_B M`.
    pub coefficient_dim: usize,
    pub endomorphism_dim: usize,
}

impl PhiReport {
    pub fn holds(&self) -> bool {
        self.base_square
            && self.squares.iter().all(|(_, ok)| *ok)
            && self.degrees.iter().all(|d| d.is_isomorphism)
    }
}

/// Builds `Phi_n: Hom_{B-B}(P_n, N) -> Hom_{A-A}(S^{(x)_A n}, W)` for
/// `n <= nmax` and checks that each is bijective and that both comparison
/// squares commute.
pub fn phi_check(m: &Bimodule, n: &Bimodule, nmax: usize, cap: usize) -> Result<PhiReport> {
    if !is_generator(m)?.is_generator || !is_fg_projective_left(m)?.holds {
        return Err(Error::Precondition(
            "the comparison maps need M to be a progenerator as a left module".into(),
        ));
    }
    let field = m.field();
    let b = m.left_algebra();
    let end = endomorphism_ring(m)?;
    let s = end.algebra.clone();
    let sd = s.dim();
    let mbs = end.module.clone();
    let dual = hom_left(&mbs, &Bimodule::regular(Arc::clone(b)))?;
    let r = dual.dim();
    let fs: Vec<Matrix> = (0..r).map(|k| dual.matrix(k)).collect();
    let xs = dual_basis_for(&mbs, &fs)?
        .dual_basis
        .ok_or_else(|| Error::Inconsistent("no dual basis for a projective module".into()))?
        .xs;

    let (w1, w) = coefficient_tensors(&dual, n, &mbs, cap)?;
    let triple = |k: usize, nu: &[Rational], mu: &[Rational]| -> Vec<Rational> {
        let mut e = vec![Rational::zero(); r];
        e[k] = Rational::one();
        w.pure(&w1.pure(&e, nu), mu)
    };

    let (kc, res) = m_cochains(m, n, nmax, cap)?;
    let rel = rel_cochains(&end.canonical, w.module(), nmax, cap)?;
    let mut bar = res.construction.clone();
    let xi = step_tables(&mut bar, &fs, nmax)?;
    let projections: Vec<Matrix> =
        (0..=nmax).map(|j| bar.tensor(j).map(|t| t.projection().clone())).collect::<Result<_>>()?;
    let step = |j: usize, x: &[Rational], k: usize| -> Matrix {
        projections[j].mul(&Matrix::column(field, x).kron(&xi[j][k]))
    };
    let act = |x: &[Rational], sigma: usize| mbs.right_action(sigma).mul_vec(x);

    let mut phis: Vec<Matrix> = Vec::with_capacity(nmax + 1);
    let mut degrees = Vec::with_capacity(nmax + 1);
    for deg in 0..=nmax {
        let width = sd.pow(deg as u32);
        // theta[t][k0][k'] in P_deg = F^{deg+1}(B)
        let mut theta: Vec<Vec<Vec<Vec<Rational>>>> = Vec::with_capacity(width);
        for t in 0..width {
            let sigma = digits(t, sd, deg);
            let mut per_k0 = vec![Vec::with_capacity(r); r];
            for kp in 0..r {
                // u[k] for the innermost factor, then fold outwards
                let mut u: Vec<Vec<Rational>> = Vec::new();
                let unit = b.unit().to_vec();
                for (pos, &sg) in sigma.iter().enumerate().rev() {
                    let level = deg - 1 - pos;
                    let next: Vec<Vec<Rational>> = (0..r)
                        .map(|k| {
                            let x = act(&xs[k], sg);
                            if pos + 1 == deg {
                                step(level, &x, kp).mul_vec(&unit)
                            } else {
                                sum_steps(&step, level, &x, &u, field)
                            }
                        })
                        .collect();
                    u = next;
                }
                for (k0, slot) in per_k0.iter_mut().enumerate() {
                    let v = if deg == 0 {
                        step(0, &xs[k0], kp).mul_vec(&unit)
                    } else {
                        sum_steps(&step, deg, &xs[k0], &u, field)
                    };
                    slot.push(v);
                }
            }
            theta.push(per_k0);
        }

        let p_dim = res.complex.objects[deg].dim();
        let space = &kc.spaces[deg];
        let target = &rel.cochains.spaces[deg];
        let t_dim = rel.powers[deg].dim();
        let mut phi = Matrix::zeros(field, target.dim(), space.dim());
        for g_idx in 0..space.dim() {
            let g = Matrix::from_vec(field, n.dim(), p_dim, space.vector(g_idx).to_vec())?;
            let mut q = Matrix::zeros(field, w.dim(), width);
            for (t, per_k0) in theta.iter().enumerate() {
                let mut acc = vec![Rational::zero(); w.dim()];
                for (k0, per_kp) in per_k0.iter().enumerate() {
                    for (kp, th) in per_kp.iter().enumerate() {
                        let v = triple(k0, &g.mul_vec(th), &xs[kp]);
                        acc = acc.iter().zip(&v).map(|(a, b)| field.add(a, b)).collect();
                    }
                }
                for (row, x) in acc.into_iter().enumerate() {
                    q.set(row, t, x);
                }
            }
            let map = if deg == 0 {
                cochain_from_element(&rel.coefficients, &q.col(0))
            } else {
                if q.mul(&rel.lift[deg]).mul(&rel.lower[deg]) != q {
                    return Err(Error::Inconsistent(format!(
                        "Phi_{deg} does not descend to the tensor power over A"
                    )));
                }
                q.mul(&rel.lift[deg])
            };
            debug_assert_eq!(map.cols(), t_dim);
            let c = target.coords(map.data()).ok_or_else(|| {
                Error::Inconsistent(format!("Phi_{deg} does not produce A-bimodule maps"))
            })?;
            for (row, x) in c.into_iter().enumerate() {
                phi.set(row, g_idx, x);
            }
        }
        degrees.push(PhiDegree {
            degree: deg,
            source_dim: space.dim(),
            target_dim: target.dim(),
            is_isomorphism: phi.is_square() && phi.rank() == phi.rows(),
        });
        phis.push(phi);
    }

    let squares = (1..=nmax)
        .map(|deg| {
            let lhs = phis[deg].mul(&kc.deltas[deg - 1]);
            let rhs = rel.cochains.deltas[deg - 1].mul(&phis[deg - 1]);
            (deg, lhs == rhs)
        })
        .collect();

    // N^B -> K^0 via nu -> g_nu o ev, against nu -> sum_k f_k (x) nu (x) x_k
    let centre = n.centralizer()?;
    let ev = res.complex.differentials[0].matrix();
    let mut base_square = true;
    for i in 0..centre.dim() {
        let nu = centre.vector(i);
        let g = Matrix::from_fn(field, n.dim(), b.dim(), |row, j| {
            n.left_action(j).mul_vec(nu)[row].clone()
        });
        let k0 = kc.spaces[0]
            .coords(g.mul(ev).data())
            .ok_or_else(|| Error::Inconsistent("g_nu o ev is not a bimodule map".into()))?;
        let lhs = phis[0].mul_vec(&k0);
        let mut elt = vec![Rational::zero(); w.dim()];
        for k in 0..r {
            let v = triple(k, nu, &xs[k]);
            elt = elt.iter().zip(&v).map(|(a, b)| field.add(a, b)).collect();
        }
        let rhs = rel.cochains.spaces[0]
            .coords(cochain_from_element(&rel.coefficients, &elt).data());
        base_square &= rhs.as_deref() == Some(&lhs[..]);
    }

    Ok(PhiReport {
        degrees,
        base_square,
        squares,
        coefficient_dim: w.dim(),
        endomorphism_dim: sd,
    })
}

fn coefficient_tensors(
    dual: &HomSpace,
    n: &Bimodule,
    mbs: &Bimodule,
    cap: usize,
) -> Result<(TensorProduct, TensorProduct)> {
    let w1 = tensor_over_capped(dual.module(), n, cap, "*M (x)_B N")?;
    let w = tensor_over_capped(w1.module(), mbs, cap, "*M (x)_B N (x)_B M")?;
    Ok((w1, w))
}

/// `S = End_B(M)` with its canonical map `A -> S`, and the `S`-bimodule
/// `W = *M (x)_B N (x)_B M` on the other side of the comparison.
pub fn morita_coefficients(m: &Bimodule, n: &Bimodule, cap: usize) -> Result<(Endomorphisms, Bimodule)> {
    let end = endomorphism_ring(m)?;
    let dual = hom_left(&end.module, &Bimodule::regular(Arc::clone(m.left_algebra())))?;
    let (_, w) = coefficient_tensors(&dual, n, &end.module, cap)?;
    Ok((end, w.module().clone()))
}

/// `sum_k step_level(x, f_k) u[k]`.
fn sum_steps(
    step: &impl Fn(usize, &[Rational], usize) -> Matrix,
    level: usize,
    x: &[Rational],
    u: &[Vec<Rational>],
    field: Field,
) -> Vec<Rational> {
    let mut acc: Option<Vec<Rational>> = None;
    for (k, uk) in u.iter().enumerate() {
        let v = step(level, x, k).mul_vec(uk);
        acc = Some(match acc {
            None => v,
            Some(a) => a.iter().zip(&v).map(|(p, q)| field.add(p, q)).collect(),
        });
    }
    acc.expect("dual basis is non-empty")
}

/// The `A`-bimodule map `A -> W`, `a -> w . a`.
fn cochain_from_element(w_aa: &Bimodule, w: &[Rational]) -> Matrix {
    let field = w_aa.field();
    let na = w_aa.right_algebra().dim();
    let cols: Vec<Vec<Rational>> = (0..na).map(|j| w_aa.right_action(j).mul_vec(w)).collect();
    Matrix::from_fn(field, w.len(), na, |row, j| cols[j][row].clone())
}

/// Big-endian base-`base` digits of `t`, `len` of them.
fn digits(mut t: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = t % base;
        t /= base;
    }
    out
}

/// `xi[j][k]`: the map `F^j(B) -> Hom_B(M, F^j(B))`,
/// `y -> (m -> ((m) f_k) . y)`, in hom coordinates.
fn step_tables(bar: &mut BarConstruction, fs: &[Matrix], nmax: usize) -> Result<Vec<Vec<Matrix>>> {
    let mut out = Vec::with_capacity(nmax + 1);
    for j in 0..=nmax {
        let y = bar.object(j)?;
        let hom = bar.hom(j)?.clone();
        let field = y.field();
        let dm = hom.source_dim();
        let mut per_k = Vec::with_capacity(fs.len());
        for fk in fs {
            let acts: Vec<Matrix> = (0..dm).map(|mp| y.left_of(&fk.col(mp))).collect();
            let mut xi = Matrix::zeros(field, hom.dim(), y.dim());
            for yi in 0..y.dim() {
                let map = Matrix::from_fn(field, y.dim(), dm, |row, mp| acts[mp].get(row, yi).clone());
                let c = hom.coords(&map).ok_or_else(|| {
                    Error::Inconsistent("m -> ((m) f) . y is not left-linear".into())
                })?;
                for (row, x) in c.into_iter().enumerate() {
                    xi.set(row, yi, x);
                }
            }
            per_k.push(xi);
        }
        out.push(per_k);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::DEFAULT_DIM_CAP;

    const Q: Field = Field::Rationals;

    #[test]
    fn simple_module_comparison() {
        let m = fixtures::fx5(Q);
        let b = Bimodule::regular(m.left_algebra().clone());
        let rep = phi_check(&m, &b, 2, DEFAULT_DIM_CAP).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn diagonal_comparison() {
        let m = fixtures::fx6(Q);
        let b = Bimodule::regular(m.left_algebra().clone());
        let rep = phi_check(&m, &b, 2, DEFAULT_DIM_CAP).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn identity_morita() {
        let b = Arc::new(crate::structures::Algebra::upper_triangular(Q, 2));
        let m = Bimodule::regular(b.clone());
        let rep = phi_check(&m, &m, 2, DEFAULT_DIM_CAP).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn non_projective_rejected() {
        let t = fixtures::trivial_over_dual_numbers(Q);
        let b = Bimodule::regular(t.left_algebra().clone());
        assert!(matches!(
            phi_check(&t, &b, 1, DEFAULT_DIM_CAP),
            Err(Error::Precondition(_))
        ));
    }
}
