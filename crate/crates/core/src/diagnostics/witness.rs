use crate::bimodule::{intertwiners, Bimodule, BimoduleMap};
use crate::error::Result;
use crate::exactlin::{
    infeasibility_certificate, solve_affine, Field, Matrix, Rational, Subspace,
};

fn dot(field: Field, a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc = field.mul_add(&acc, x, y);
    }
    acc
}

/// Invariant elements of `x` (`b s = s b` on every basis element), computed
/// without the generator shortcut.
fn full_centralizer(x: &Bimodule) -> Subspace {
    let mut sub = Subspace::full(x.field(), x.dim());
    for (l, r) in x.left_actions().iter().zip(x.right_actions()) {
        let emb = sub.embedding();
        let k = l.sub(r).mul(&emb).kernel();
        sub = Subspace::span(&emb.mul(&k.embedding()).transpose());
    }
    sub
}

/// Result of searching for an invariant `s` in a `B`-bimodule `X` with
/// `map(s) = 1_B`.
#[derive(Clone, Debug)]
pub struct CasimirVerdict {
    pub holds: bool,
    /// The invariant element, in coordinates of `X`.
    pub casimir: Option<Vec<Rational>>,
    /// A functional `phi` on `B` with `phi(map(s)) = 0` for every invariant
    /// `s` and `phi(1) = 1`.
    pub obstruction: Option<Vec<Rational>>,
    pub space_dim: usize,
    pub centralizer_dim: usize,
    space: Bimodule,
    map: Matrix,
    unit: Vec<Rational>,
}

impl CasimirVerdict {
    pub fn search(space: &Bimodule, map: &Matrix, unit: &[Rational]) -> Result<Self> {
        let centre = space.centralizer()?;
        let constraints = map.mul(&centre.embedding());
        let (casimir, obstruction) = match solve_affine(&constraints, unit)? {
            Some(sol) => (Some(centre.combine(&sol.particular)), None),
            None => (None, infeasibility_certificate(&constraints, unit)),
        };
        Ok(CasimirVerdict {
            holds: casimir.is_some(),
            casimir,
            obstruction,
            space_dim: space.dim(),
            centralizer_dim: centre.dim(),
            space: space.clone(),
            map: map.clone(),
            unit: unit.to_vec(),
        })
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    /// Re-checks the witness from scratch against every basis element.
    pub fn revalidate(&self) -> bool {
        let f = self.space.field();
        match (&self.casimir, &self.obstruction) {
            (Some(s), _) => {
                self.holds
                    && self
                        .space
                        .left_actions()
                        .iter()
                        .zip(self.space.right_actions())
                        .all(|(l, r)| l.mul_vec(s) == r.mul_vec(s))
                    && self.map.mul_vec(s) == self.unit
            }
            (None, Some(phi)) => {
                let centre = full_centralizer(&self.space);
                !self.holds
                    && dot(f, phi, &self.unit).is_one()
                    && (0..centre.dim())
                        .all(|i| dot(f, phi, &self.map.mul_vec(centre.vector(i))).is_zero())
            }
            (None, None) => false,
        }
    }
}

/// Result of searching for a bimodule section of an epimorphism.
#[derive(Clone, Debug)]
pub struct SectionVerdict {
    pub holds: bool,
    /// `sigma: target -> source` with `epi o sigma = id`.
    pub section: Option<Matrix>,
    /// A functional on `End_k(target)` vanishing on every `epi o sigma` for
    /// bimodule maps `sigma`, but not on the identity.
    pub obstruction: Option<Vec<Rational>>,
    pub hom_dim: usize,
    epi: BimoduleMap,
}

impl SectionVerdict {
    pub fn search(epi: &BimoduleMap) -> Result<Self> {
        let src = epi.source();
        let tgt = epi.target();
        let f = src.field();
        let hom = crate::bimodule::bimodule_hom(tgt, src)?;
        let e = epi.matrix();
        let (ds, dt) = (src.dim(), tgt.dim());
        let sigmas: Vec<Matrix> = (0..hom.dim())
            .map(|j| Matrix::from_vec(f, ds, dt, hom.vector(j).to_vec()))
            .collect::<Result<_>>()?;
        let mut constraints = Matrix::zeros(f, dt * dt, hom.dim());
        for (j, s) in sigmas.iter().enumerate() {
            for (r, x) in e.mul(s).into_data().into_iter().enumerate() {
                if !x.is_zero() {
                    constraints.set(r, j, x);
                }
            }
        }
        let rhs = Matrix::identity(f, dt).into_data();
        let (section, obstruction) = match solve_affine(&constraints, &rhs)? {
            Some(sol) => {
                let v = hom.combine(&sol.particular);
                (Some(Matrix::from_vec(f, ds, dt, v)?), None)
            }
            None => (None, infeasibility_certificate(&constraints, &rhs)),
        };
        Ok(SectionVerdict {
            holds: section.is_some(),
            section,
            obstruction,
            hom_dim: hom.dim(),
            epi: epi.clone(),
        })
    }

    pub fn epi(&self) -> &BimoduleMap {
        &self.epi
    }

    /// Re-checks the witness against every basis element of both algebras.
    pub fn revalidate(&self) -> bool {
        let src = self.epi.source();
        let tgt = self.epi.target();
        let f = src.field();
        match (&self.section, &self.obstruction) {
            (Some(s), _) => {
                self.holds
                    && BimoduleMap::new(tgt.clone(), src.clone(), s.clone()).is_ok()
                    && self.epi.matrix().mul(s).is_identity()
            }
            (None, Some(phi)) => {
                let mut pairs: Vec<(&Matrix, &Matrix)> =
                    src.left_actions().iter().zip(tgt.left_actions()).collect();
                pairs.extend(src.right_actions().iter().zip(tgt.right_actions()));
                let hom = intertwiners(f, tgt.dim(), src.dim(), &pairs);
                let id = Matrix::identity(f, tgt.dim()).into_data();
                !self.holds
                    && dot(f, phi, &id).is_one()
                    && (0..hom.dim()).all(|j| {
                        let s = Matrix::from_vec(f, src.dim(), tgt.dim(), hom.vector(j).to_vec())
                            .expect("shape");
                        dot(f, phi, self.epi.matrix().mul(&s).data()).is_zero()
                    })
            }
            (None, None) => false,
        }
    }
}
