//! Decision procedures with witnesses: separability, relative
//! projectivity, formal smoothness, Hochschild dimension bounds and the
//! Morita-style cross-checks.

use std::sync::Arc;

use crate::bimodule::{
    counit_capped, evaluation_map, is_fg_projective_left, is_generator, tensor_over_capped,
    Bimodule, BimoduleMap,
};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::structures::{multiplication_map, RingMap};

mod cross;
mod hdim;
mod witness;

pub use cross::{
    morita_check, smooth_product, static_criteria, sugano_check, Hypothesis, MoritaReport,
    ProductReport, StaticReport, SuganoReport,
};
pub use hdim::{hdim_upto, Hdim, HdimResult, HdimStep};
pub use witness::{CasimirVerdict, SectionVerdict};

/// `M` is separable iff `ev_M` splits as a map of `B`-bimodules, i.e. iff an
/// invariant `s` in `M (x)_A *M` with `ev(s) = 1` exists.
pub fn is_separable_bimodule(m: &Bimodule) -> Result<CasimirVerdict> {
    let ev = evaluation_map(m)?;
    CasimirVerdict::search(ev.tensor.module(), ev.map.matrix(), m.left_algebra().unit())
}

/// Relative projectivity of a `B`-bimodule `P`: whether
/// `eps_P: M (x)_A Hom_B(M, P) -> P` has a bimodule section.
pub fn is_rel_projective(p: &Bimodule, m: &Bimodule, cap: usize) -> Result<SectionVerdict> {
    let eps = counit_capped(m, p, cap, "M (x)_A Hom_B(M, P)")?;
    SectionVerdict::search(&eps.map)
}

/// How a smoothness verdict was reached.
#[derive(Clone, Debug)]
pub enum SmoothRoute {
    /// `ev_M` is injective, so its kernel is zero.
    EvInjective { rank: usize, tensor_dim: usize },
    /// `M` is separable.
    Separable(CasimirVerdict),
    /// Decided by relative projectivity of `Ker ev_M`.
    KernelSection(SectionVerdict),
}

#[derive(Clone, Debug)]
pub struct SmoothVerdict {
    pub holds: bool,
    pub kernel_dim: usize,
    pub route: SmoothRoute,
}

impl SmoothVerdict {
    pub fn revalidate(&self) -> bool {
        match &self.route {
            SmoothRoute::EvInjective { rank, tensor_dim } => {
                self.holds && rank == tensor_dim && self.kernel_dim == 0
            }
            SmoothRoute::Separable(c) => self.holds && c.holds && c.revalidate(),
            SmoothRoute::KernelSection(s) => self.holds == s.holds && s.revalidate(),
        }
    }
}

/// Formal smoothness of `M`, short-circuiting on injective `ev_M` and on
/// separability.
pub fn is_formally_smooth_bimodule(m: &Bimodule, cap: usize) -> Result<SmoothVerdict> {
    let ev = evaluation_map(m)?;
    let rank = ev.map.rank();
    let tensor_dim = ev.tensor.dim();
    let kernel_dim = tensor_dim - rank;
    if kernel_dim == 0 {
        return Ok(SmoothVerdict {
            holds: true,
            kernel_dim,
            route: SmoothRoute::EvInjective { rank, tensor_dim },
        });
    }
    let sep = CasimirVerdict::search(ev.tensor.module(), ev.map.matrix(), m.left_algebra().unit())?;
    if sep.holds {
        return Ok(SmoothVerdict {
            holds: true,
            kernel_dim,
            route: SmoothRoute::Separable(sep),
        });
    }
    formally_smooth_by_kernel(m, cap)
}

/// Formal smoothness decided only through `Ker ev_M`, without shortcuts.
pub fn formally_smooth_by_kernel(m: &Bimodule, cap: usize) -> Result<SmoothVerdict> {
    let ev = evaluation_map(m)?;
    let (kernel, _) = ev.map.kernel()?;
    let s = is_rel_projective(&kernel, m, cap)?;
    Ok(SmoothVerdict {
        holds: s.holds,
        kernel_dim: kernel.dim(),
        route: SmoothRoute::KernelSection(s),
    })
}

/// `f: A -> S` is separable iff `m_S: S (x)_A S -> S` splits.
pub fn is_separable_extension(f: &RingMap) -> Result<CasimirVerdict> {
    let s = f.target();
    let (t, mult) = multiplication_map(s, f)?;
    CasimirVerdict::search(t.module(), mult.matrix(), s.unit())
}

#[derive(Clone, Debug)]
pub struct ExtensionSmoothness {
    pub holds: bool,
    /// `dim Ker(m_B)`.
    pub kernel_dim: usize,
    pub section: SectionVerdict,
}

/// `f: A -> B` is formally smooth iff `L = Ker(m_B)` is projective relative
/// to restriction to `A`-bimodules, i.e. iff `B (x)_A L (x)_A B -> L` splits.
pub fn is_formally_smooth_extension(f: &RingMap, cap: usize) -> Result<ExtensionSmoothness> {
    let b = f.target();
    let field = b.field();
    let nb = b.dim();
    let (_, mult) = multiplication_map(b, f)?;
    let (l, _) = mult.kernel()?;
    let dl = l.dim();
    let reg = Bimodule::regular(Arc::clone(b));
    let b_ba = reg.restrict_right(f)?;
    let b_ab = reg.restrict_left(f)?;
    let x1 = tensor_over_capped(&b_ba, &l.restrict_left(f)?, cap, "B (x)_A L")?;
    let t = tensor_over_capped(&x1.module().restrict_right(f)?, &b_ab, cap, "B (x)_A L (x)_A B")?;
    // b_i (x) l_k (x) b_j -> b_i l_k b_j
    let plain3 = Matrix::from_fn(field, dl, nb * dl * nb, |row, c| {
        let (i, k, j) = (c / (dl * nb), (c / nb) % dl, c % nb);
        let mut e = vec![crate::exactlin::Rational::zero(); dl];
        e[k] = crate::exactlin::Rational::one();
        l.left_action(i).mul(l.right_action(j)).mul_vec(&e)[row].clone()
    });
    let eps = plain3
        .mul(&x1.section().kron(&Matrix::identity(field, nb)))
        .mul(t.section());
    let epi = BimoduleMap::new(t.module().clone(), l, eps)?;
    let section = SectionVerdict::search(&epi)?;
    Ok(ExtensionSmoothness {
        holds: section.holds,
        kernel_dim: dl,
        section,
    })
}

/// Per-bimodule verdicts used by the classification grid.
#[derive(Clone, Debug)]
pub struct DiagnosticsReport {
    pub generator: bool,
    pub fg_projective: bool,
    pub separable: CasimirVerdict,
    pub smooth: SmoothVerdict,
    /// Present only for generators.
    pub hdim: Option<HdimResult>,
    /// Named intermediate dimensions, in a fixed order.
    pub dims: Vec<(String, usize)>,
}

pub fn diagnose(m: &Bimodule, nmax: usize, cap: usize) -> Result<DiagnosticsReport> {
    let g = is_generator(m)?;
    let fg = is_fg_projective_left(m)?;
    let separable = is_separable_bimodule(m)?;
    let smooth = is_formally_smooth_bimodule(m, cap)?;
    let hdim = if g.is_generator {
        Some(hdim_upto(m, nmax, cap)?)
    } else {
        None
    };
    let dims = vec![
        ("M".to_string(), m.dim()),
        ("B".to_string(), m.left_algebra().dim()),
        ("A".to_string(), m.right_algebra().dim()),
        ("*M".to_string(), g.ev.hom.dim()),
        ("M (x)_A *M".to_string(), g.ev.tensor.dim()),
        ("Ker ev".to_string(), smooth.kernel_dim),
        ("centralizer".to_string(), separable.centralizer_dim),
    ];
    Ok(DiagnosticsReport {
        generator: g.is_generator,
        fg_projective: fg.holds,
        separable,
        smooth,
        hdim,
        dims,
    })
}

pub(crate) fn require_progenerator(m: &Bimodule) -> Result<()> {
    if !is_generator(m)?.is_generator || !is_fg_projective_left(m)?.holds {
        return Err(Error::Precondition(
            "M must be a finitely generated projective generator as a left module".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;
    use crate::structures::Algebra;
    use crate::DEFAULT_DIM_CAP;

    const Q: Field = Field::Rationals;

    #[test]
    fn separability_grid() {
        let expect = [("FX2", true), ("FX3", false), ("FX4", false), ("FX5", true)];
        let all = fixtures::standard(Q);
        for (name, want) in expect {
            let m = &all.iter().find(|(n, _)| *n == name).unwrap().1;
            let v = is_separable_bimodule(m).unwrap();
            assert_eq!(v.holds, want, "{name}");
            assert!(v.revalidate(), "{name}");
        }
    }

    #[test]
    fn smoothness_grid() {
        let expect = [("FX2", true), ("FX3", false), ("FX4", true), ("FX5", true)];
        let all = fixtures::standard(Q);
        for (name, want) in expect {
            let m = &all.iter().find(|(n, _)| *n == name).unwrap().1;
            let v = is_formally_smooth_bimodule(m, DEFAULT_DIM_CAP).unwrap();
            assert_eq!(v.holds, want, "{name}");
            assert!(v.revalidate(), "{name}");
            let direct = formally_smooth_by_kernel(m, DEFAULT_DIM_CAP).unwrap();
            assert_eq!(direct.holds, want, "{name} direct");
            assert!(direct.revalidate());
        }
        let fx4 = fixtures::fx4(Q);
        assert_eq!(formally_smooth_by_kernel(&fx4, DEFAULT_DIM_CAP).unwrap().kernel_dim, 6);
    }

    #[test]
    fn relative_projectivity_of_b() {
        let fx2 = fixtures::fx2(Q);
        let b2 = Bimodule::regular(fx2.left_algebra().clone());
        assert!(is_rel_projective(&b2, &fx2, DEFAULT_DIM_CAP).unwrap().holds);
        let fx3 = fixtures::fx3(Q);
        let b3 = Bimodule::regular(fx3.left_algebra().clone());
        let v = is_rel_projective(&b3, &fx3, DEFAULT_DIM_CAP).unwrap();
        assert!(!v.holds);
        assert!(v.revalidate());
    }

    #[test]
    fn extensions() {
        let inc = fixtures::diagonal_inclusion(Q);
        assert!(is_separable_extension(&inc).unwrap().holds);
        let b = Arc::new(Algebra::truncated_polynomial(Q, 2));
        let unit = RingMap::unit_map(b.clone());
        assert!(!is_separable_extension(&unit).unwrap().holds);
        assert!(is_separable_extension(&RingMap::identity(b)).unwrap().holds);

        for (alg, want) in [
            (Algebra::product_of_fields(Q, 2), true),
            (Algebra::truncated_polynomial(Q, 2), false),
            (Algebra::upper_triangular(Q, 2), true),
        ] {
            let f = RingMap::unit_map(Arc::new(alg));
            let v = is_formally_smooth_extension(&f, DEFAULT_DIM_CAP).unwrap();
            assert_eq!(v.holds, want);
            assert!(v.section.revalidate());
        }
    }
}
