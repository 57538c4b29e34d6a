use std::sync::Arc;

use super::{
    is_formally_smooth_bimodule, is_separable_bimodule, is_separable_extension, require_progenerator,
    SmoothVerdict,
};
use crate::bimodule::{
    dual_module, endomorphism_ring, evaluation_map, ev_over_s, is_fg_projective_left,
    is_fg_projective_right, is_generator, static_check, tensor_over_capped, trace_ideal, Bimodule,
};
use crate::error::{Error, Result};
use crate::homology::{m_hochschild, morita_coefficients, phi_check, rel_hochschild, PhiReport};

/// Both sides of the Morita comparison for one coefficient bimodule.
#[derive(Clone, Debug)]
pub struct MoritaReport {
    /// `dim H^n_M(B, N)`.
    pub m_side: Vec<usize>,
    /// `dim H^n(S|A, *M (x)_B N (x)_B M)`.
    pub relative_side: Vec<usize>,
    pub endomorphism_dim: usize,
    pub coefficient_dim: usize,
    pub phi: PhiReport,
}

impl MoritaReport {
    pub fn holds(&self) -> bool {
        self.m_side == self.relative_side && self.phi.holds()
    }
}

pub fn morita_check(m: &Bimodule, n: &Bimodule, nmax: usize, cap: usize) -> Result<MoritaReport> {
    require_progenerator(m)?;
    let m_side = m_hochschild(m, n, nmax, cap)?.dims();
    let (end, w) = morita_coefficients(m, n, cap)?;
    let relative_side = rel_hochschild(&end.canonical, &w, nmax, cap)?.dims();
    let phi = phi_check(m, n, nmax, cap)?;
    Ok(MoritaReport {
        m_side,
        relative_side,
        endomorphism_dim: end.algebra.dim(),
        coefficient_dim: w.dim(),
        phi,
    })
}

/// Separable bimodule versus (generator and separable `A -> S`).
#[derive(Clone, Debug)]
pub struct SuganoReport {
    /// `M` is finitely generated projective on the left, so the equivalence
    /// applies.
    pub applicable: bool,
    pub separable: bool,
    pub generator: bool,
    pub extension_separable: bool,
}

impl SuganoReport {
    pub fn consistent(&self) -> bool {
        !self.applicable || self.separable == (self.generator && self.extension_separable)
    }
}

pub fn sugano_check(m: &Bimodule) -> Result<SuganoReport> {
    let applicable = is_fg_projective_left(m)?.holds;
    let separable = is_separable_bimodule(m)?.holds;
    let generator = is_generator(m)?.is_generator;
    let end = endomorphism_ring(m)?;
    let extension_separable = is_separable_extension(&end.canonical)?.holds;
    Ok(SuganoReport {
        applicable,
        separable,
        generator,
        extension_separable,
    })
}

#[derive(Clone, Debug)]
pub struct StaticReport {
    pub ev_over_s_injective: bool,
    pub ev_over_s_surjective: bool,
    pub trace_dim: usize,
    pub trace_static: bool,
    pub generator: bool,
    /// `M` as a `B`-`S` bimodule is separable.
    pub bs_separable: bool,
}

impl StaticReport {
    pub fn consistent(&self) -> bool {
        let iso = self.ev_over_s_injective && self.ev_over_s_surjective;
        self.ev_over_s_injective == self.trace_static
            && self.bs_separable == self.generator
            && self.generator == iso
    }
}

pub fn static_criteria(m: &Bimodule) -> Result<StaticReport> {
    let (end, ev) = ev_over_s(m)?;
    let tr = trace_ideal(m)?;
    let (tr_mod, _) = Bimodule::regular(Arc::clone(m.left_algebra())).submodule(&tr)?;
    let st = static_check(m, &tr_mod)?;
    Ok(StaticReport {
        ev_over_s_injective: ev.map.is_injective(),
        ev_over_s_surjective: ev.map.is_surjective(),
        trace_dim: tr.dim(),
        trace_static: st.is_static(),
        generator: is_generator(m)?.is_generator,
        bs_separable: is_separable_bimodule(&end.module)?.holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ProductReport {
    pub module: Bimodule,
    pub hypotheses: Vec<Hypothesis>,
    pub smooth: SmoothVerdict,
}

impl ProductReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect()
    }

    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold() || self.smooth.holds
    }
}

/// `M = X (x)_T Y` with the hypotheses under which `M` is formally smooth.
/// Mode 1 asks `Y` to be separable; mode 2 asks `*X` to be projective over
/// `T` and `Y` to be projective on the left and formally smooth.
pub fn smooth_product(x: &Bimodule, y: &Bimodule, mode: u8, cap: usize) -> Result<ProductReport> {
    if !(mode == 1 || mode == 2) {
        return Err(Error::Precondition(format!("smooth_product mode must be 1 or 2, got {mode}")));
    }
    let t = tensor_over_capped(x, y, cap, "X (x)_T Y")?;
    let mut hypotheses = vec![
        Hypothesis {
            name: "ev_X injective".into(),
            holds: evaluation_map(x)?.map.is_injective(),
        },
        Hypothesis {
            name: "X projective as a right T-module".into(),
            holds: is_fg_projective_right(x)?.holds,
        },
    ];
    if mode == 1 {
        hypotheses.push(Hypothesis {
            name: "Y separable".into(),
            holds: is_separable_bimodule(y)?.holds,
        });
    } else {
        let dual = dual_module(x)?;
        hypotheses.push(Hypothesis {
            name: "*X projective over T".into(),
            holds: is_fg_projective_left(dual.module())?.holds,
        });
        hypotheses.push(Hypothesis {
            name: "Y projective as a left T-module".into(),
            holds: is_fg_projective_left(y)?.holds,
        });
        hypotheses.push(Hypothesis {
            name: "Y formally smooth".into(),
            holds: is_formally_smooth_bimodule(y, cap)?.holds,
        });
    }
    let module = t.module().clone();
    let smooth = is_formally_smooth_bimodule(&module, cap)?;
    Ok(ProductReport {
        module,
        hypotheses,
        smooth,
    })
}
