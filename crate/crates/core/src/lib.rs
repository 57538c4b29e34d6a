//! Exact homological diagnostics for finite-dimensional bimodules.
//!
//! Given finite-dimensional algebras `B`, `A` over `Q` or `F_p` and a
//! `B`-`A` bimodule `M`, this crate decides whether `M` is a generator, a
//! separable bimodule or a formally smooth bimodule, computes the
//! `M`-relative Hochschild cohomology `H^n_M(B, N)` from the relative bar
//! resolution, computes `A`-relative Hochschild cohomology of ring
//! extensions, and cross-checks the two through the endomorphism ring of a
//! progenerator. Every verdict carries a witness (a Casimir element, a
//! section, a dual basis) or an obstruction (an infeasibility certificate).
//!
//! Conventions: homomorphisms of left modules are written on the left of
//! their argument in the mathematics, so `S = End_B(M)` multiplies as
//! "apply `f`, then `g`", and `M` becomes a `B`-`S` bimodule. Right actions
//! are stored as matrices `R(a)` with `R(a) v = v . a`, hence
//! `R(a a') = R(a') R(a)`.

pub mod bimodule;
pub mod diagnostics;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod homology;
pub mod structures;

pub use bimodule::{Bimodule, BimoduleMap, HomSpace, TensorProduct};
pub use error::{Error, Result};
pub use exactlin::{Field, Matrix, Rational, Subspace};
pub use structures::{Algebra, RingMap};

/// Default cap on the dimension of any intermediate tensor space.
pub const DEFAULT_DIM_CAP: usize = 20_000;
