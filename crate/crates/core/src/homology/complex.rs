use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational, Subspace};

/// `.. -> P_1 -> P_0 -> B`, with `differentials[n] = d_n: P_n -> P_{n-1}`
/// and `P_{-1} = B`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub objects: Vec<Bimodule>,
    pub augmentation_target: Bimodule,
    pub differentials: Vec<BimoduleMap>,
}

impl ChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.objects.iter().map(Bimodule::dim).collect()
    }

    /// `d_n d_{n+1} = 0` for every adjacent pair.
    pub fn squares_to_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].matrix().mul(w[1].matrix()).is_zero())
    }

    /// Each differential intertwines both actions on every basis element.
    pub fn maps_are_valid(&self) -> bool {
        self.differentials.iter().all(|d| d.validate().is_ok())
    }

    /// `ker d_n = im d_{n+1}` as far as the stored differentials reach, plus
    /// surjectivity of `d_0`.
    pub fn is_exact(&self) -> bool {
        let Some(d0) = self.differentials.first() else {
            return true;
        };
        if !d0.is_surjective() {
            return false;
        }
        self.differentials.windows(2).all(|w| {
            let ker = w[0].matrix().kernel().dim();
            ker == w[1].rank()
        })
    }
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub dim: usize,
    /// Cocycles spanning a complement of the coboundaries, in cochain
    /// coordinates.
    pub representatives: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyResult {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }
}

/// Cohomology in degrees `0 ..= deltas.len() - 1` of the cochain complex
/// with coboundaries `deltas[n]: K^n -> K^{n+1}` (as matrices in
/// coordinates).
pub fn cohomology(deltas: &[Matrix]) -> Result<CohomologyResult> {
    let mut degrees = Vec::with_capacity(deltas.len());
    for (n, delta) in deltas.iter().enumerate() {
        let field = delta.field();
        let kn = delta.cols();
        if n > 0 && deltas[n - 1].rows() != kn {
            return Err(Error::DimensionMismatch(format!(
                "coboundaries {} and {n} are not composable",
                n - 1
            )));
        }
        let cocycles = delta.kernel();
        let coboundaries = if n == 0 {
            Subspace::zero(field, kn)
        } else {
            Subspace::span(&deltas[n - 1].transpose())
        };
        if !coboundaries.is_subspace_of(&cocycles) {
            return Err(Error::Inconsistent(format!(
                "coboundary composite in degree {n} is not zero"
            )));
        }
        let mut span = coboundaries.clone();
        let mut representatives = Vec::new();
        for i in 0..cocycles.dim() {
            let z = cocycles.vector(i);
            if !span.contains(z) {
                representatives.push(z.to_vec());
                span = span.sum(&Subspace::span(&Matrix::row_vector(field, z)));
            }
        }
        degrees.push(DegreeCohomology {
            degree: n,
            cochain_dim: kn,
            cocycle_dim: cocycles.dim(),
            coboundary_dim: coboundaries.dim(),
            dim: cocycles.dim() - coboundaries.dim(),
            representatives,
        });
    }
    Ok(CohomologyResult { degrees })
}
