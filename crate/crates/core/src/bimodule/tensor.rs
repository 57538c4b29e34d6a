use super::Bimodule;
use crate::error::{Error, Result};
use crate::exactlin::{quotient_space, Matrix, QuotientSpace, Rational, Subspace};
use crate::structures::same_algebra;
use crate::DEFAULT_DIM_CAP;

/// `M (x)_A X` as a quotient of the plain tensor space `M (x) X`, whose
/// basis vector `m_i (x) x_j` sits at index `i * dim X + j`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    module: Bimodule,
    quotient: QuotientSpace,
    left_dim: usize,
    right_dim: usize,
}

impl TensorProduct {
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim
    }

    /// `dim x plain_dim`.
    pub fn projection(&self) -> &Matrix {
        &self.quotient.projection
    }

    /// `plain_dim x dim`, a right inverse of the projection.
    pub fn section(&self) -> &Matrix {
        &self.quotient.section
    }

    pub fn relations(&self) -> &Subspace {
        &self.quotient.relations
    }

    pub fn plain_dim(&self) -> usize {
        self.left_dim * self.right_dim
    }

    pub fn left_factor_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_factor_dim(&self) -> usize {
        self.right_dim
    }

    /// Class of `x (x) y`.
    pub fn pure(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let f = self.module.field();
        let mut plain = vec![Rational::zero(); self.plain_dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    plain[i * self.right_dim + j] = f.mul(a, b);
                }
            }
        }
        self.quotient.projection.mul_vec(&plain)
    }
}

pub fn tensor_over(m: &Bimodule, x: &Bimodule) -> Result<TensorProduct> {
    tensor_over_capped(m, x, DEFAULT_DIM_CAP, "M (x)_A X")
}

/// [`tensor_over`] with a cap on the plain tensor dimension; `what` names
/// the space in the resource error.
pub fn tensor_over_capped(m: &Bimodule, x: &Bimodule, cap: usize, what: &str) -> Result<TensorProduct> {
    if !same_algebra(m.right_algebra(), x.left_algebra()) {
        return Err(Error::AlgebraMismatch(
            "tensor_over: right algebra of the first factor differs from the left algebra of the second"
                .into(),
        ));
    }
    let f = m.field();
    let (dm, dx) = (m.dim(), x.dim());
    let plain = dm * dx;
    if plain > cap {
        return Err(Error::DimensionCap {
            what: what.to_string(),
            dim: plain,
            cap,
        });
    }
    let id_m = Matrix::identity(f, dm);
    let id_x = Matrix::identity(f, dx);
    // Relations (m a) (x) y - m (x) (a y) for generators a suffice.
    let blocks: Vec<Matrix> = m
        .right_generator_actions()
        .into_iter()
        .zip(x.left_generator_actions())
        .map(|(ra, la)| ra.kron(&id_x).sub(&id_m.kron(la)).transpose())
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let relations = Subspace::span(&Matrix::vstack(f, plain, &refs));
    let quotient = quotient_space(plain, &relations)?;
    let descend = |op: &Matrix| quotient.projection.mul(op).mul(&quotient.section);
    let left = m.left_actions().iter().map(|lb| descend(&lb.kron(&id_x))).collect();
    let right = x.right_actions().iter().map(|rt| descend(&id_m.kron(rt))).collect();
    let module = Bimodule::new_unchecked(
        m.left_algebra().clone(),
        x.right_algebra().clone(),
        quotient.dim,
        left,
        right,
    );
    Ok(TensorProduct {
        module,
        quotient,
        left_dim: dm,
        right_dim: dx,
    })
}
