//! Bar resolutions, relative and classical-style Hochschild cohomology, and
//! the comparison maps between them.

mod bar;
mod complex;

pub use bar::{
    bar_resolution, comonad_apply, homotopy_check, syzygy, BarConstruction, BarResolution,
    HomotopyReport,
};
pub use complex::{cohomology, ChainComplex, CohomologyResult, DegreeCohomology};

mod hochschild;

pub use hochschild::{
    m_cochains, m_hochschild, rel_cochains, rel_hochschild, regular_coefficients, Cochains,
    RelativeComplex,
};

mod phi;

pub use phi::{morita_coefficients, phi_check, PhiDegree, PhiReport};
