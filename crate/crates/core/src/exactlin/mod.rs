//! Exact dense linear algebra over `Q` and `F_p`.
//!
//! Every structural question the crate answers (is there a section, is this
//! map onto, what is this quotient) is reduced to the primitives here:
//! reduced row echelon form, kernels, affine solving and quotient spaces.
//! Pivoting always picks the leftmost nonzero column, so every basis and
//! witness computed downstream is reproducible bit for bit.

mod field;
mod matrix;
mod rational;
mod sparse;

pub use field::Field;
pub use matrix::{
    infeasibility_certificate, kernel_basis, quotient_space, rref, solve_affine, AffineSolution,
    Matrix, QuotientSpace, Subspace,
};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{sparse_kernel, sparse_span, SparseRow};
