//! Standard small bimodules used by tests, benches and the CLI.
//!
//! | name | `B` | `A` | `M` |
//! |------|-----|-----|-----|
//! | FX1 | `k` | `k` | `k` |
//! | FX2 | `k x k` | `k` | `B` |
//! | FX3 | `k[x]/x^2` | `k` | `B` |
//! | FX4 | upper triangular `2x2` | `k` | `B` |
//! | FX5 | `M_2(k)` | `k` | `k^2` (columns) |
//! | FX6 | `M_2(k)` | diagonal `k x k` | `B` |

use std::sync::Arc;

use crate::bimodule::Bimodule;
use crate::exactlin::{Field, Matrix, Rational};
use crate::structures::{Algebra, RingMap};

/// `B` as a `B`-`k` bimodule.
pub fn regular_over_ground(b: Algebra) -> Bimodule {
    let b = Arc::new(b);
    Bimodule::regular(b.clone())
        .restrict_right(&RingMap::unit_map(b))
        .expect("unit map lands in B")
}

pub fn fx1(field: Field) -> Bimodule {
    regular_over_ground(Algebra::ground(field))
}

pub fn fx2(field: Field) -> Bimodule {
    regular_over_ground(Algebra::product_of_fields(field, 2))
}

pub fn fx3(field: Field) -> Bimodule {
    regular_over_ground(Algebra::truncated_polynomial(field, 2))
}

pub fn fx4(field: Field) -> Bimodule {
    regular_over_ground(Algebra::upper_triangular(field, 2))
}

/// Column vectors `k^2` over `M_2(k)`, with `k` acting on the right.
pub fn fx5(field: Field) -> Bimodule {
    let b = Arc::new(Algebra::matrix_algebra(field, 2));
    let k = Arc::new(Algebra::ground(field));
    let left = (0..4).map(|idx| unit_matrix(field, 2, idx / 2, idx % 2)).collect();
    Bimodule::new(b, k, left, vec![Matrix::identity(field, 2)]).expect("k^2 is a module")
}

/// The inclusion of the diagonal `k x k` into `M_2(k)`.
pub fn diagonal_inclusion(field: Field) -> RingMap {
    let b = Arc::new(Algebra::matrix_algebra(field, 2));
    let a = Arc::new(Algebra::product_of_fields(field, 2));
    RingMap::new(a, b, Matrix::from_ints(field, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]))
        .expect("diagonal inclusion")
}

pub fn fx6(field: Field) -> Bimodule {
    let inc = diagonal_inclusion(field);
    Bimodule::regular(inc.target().clone())
        .restrict_right(&inc)
        .expect("diagonal inclusion")
}

/// `k` over `k[x]/x^2` with `x` acting as zero.
pub fn trivial_over_dual_numbers(field: Field) -> Bimodule {
    let b = Arc::new(Algebra::truncated_polynomial(field, 2));
    let k = Arc::new(Algebra::ground(field));
    Bimodule::new(
        b,
        k,
        vec![Matrix::identity(field, 1), Matrix::zeros(field, 1, 1)],
        vec![Matrix::identity(field, 1)],
    )
    .expect("trivial module")
}

fn unit_matrix(field: Field, n: usize, i: usize, j: usize) -> Matrix {
    Matrix::from_fn(field, n, n, |r, c| {
        if r == i && c == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// FX1 through FX6 with their names.
pub fn standard(field: Field) -> Vec<(&'static str, Bimodule)> {
    vec![
        ("FX1", fx1(field)),
        ("FX2", fx2(field)),
        ("FX3", fx3(field)),
        ("FX4", fx4(field)),
        ("FX5", fx5(field)),
        ("FX6", fx6(field)),
    ]
}
