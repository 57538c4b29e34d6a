use std::fmt;

use super::{is_rel_projective, SectionVerdict};
use crate::bimodule::Bimodule;
use crate::error::Result;
use crate::homology::bar_resolution;

/// Bounded value of the relative Hochschild dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hdim {
    Exact(usize),
    /// No syzygy up to the bound was relatively projective.
    Beyond(usize),
}

impl fmt::Display for Hdim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hdim::Exact(n) => write!(f, "{n}"),
            Hdim::Beyond(n) => write!(f, "> {n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HdimStep {
    pub n: usize,
    pub syzygy_dim: usize,
    pub projective: bool,
    pub section: SectionVerdict,
}

#[derive(Clone, Debug)]
pub struct HdimResult {
    pub value: Hdim,
    pub steps: Vec<HdimStep>,
    /// Set when the verdict relies on the syzygy criterion beyond degree 1.
    pub inferred: bool,
}

impl HdimResult {
    pub fn at_most(&self, n: usize) -> Option<bool> {
        match self.value {
            Hdim::Exact(d) => Some(d <= n),
            Hdim::Beyond(b) if n <= b => Some(false),
            Hdim::Beyond(_) => None,
        }
    }
}

/// Least `n <= nmax` such that `Omega^n` is relatively projective.
pub fn hdim_upto(m: &Bimodule, nmax: usize, cap: usize) -> Result<HdimResult> {
    let res = bar_resolution(m, nmax.max(1), cap)?;
    let mut steps = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let omega = if n == 0 {
            Bimodule::regular(m.left_algebra().clone())
        } else {
            res.complex.differentials[n - 1].kernel()?.0
        };
        let section = is_rel_projective(&omega, m, cap)?;
        let projective = section.holds;
        steps.push(HdimStep {
            n,
            syzygy_dim: omega.dim(),
            projective,
            section,
        });
        if projective {
            return Ok(HdimResult {
                value: Hdim::Exact(n),
                steps,
                inferred: n >= 2,
            });
        }
    }
    Ok(HdimResult {
        value: Hdim::Beyond(nmax),
        steps,
        inferred: nmax >= 2,
    })
}
