use std::collections::HashMap;
use std::sync::Arc;

use super::complex::ChainComplex;
use crate::bimodule::{
    counit, hom_left, is_generator, plain_evaluation, tensor_over_capped, Bimodule, BimoduleMap,
    Counit, HomSpace, TensorProduct,
};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// `F(Y) = M (x)_A Hom_B(M, Y)` with counit `eps_Y: F(Y) -> Y`.
pub fn comonad_apply(m: &Bimodule, n: &Bimodule) -> Result<Counit> {
    counit(m, n)
}

/// The iterates `F^k(B)` of the comonad, built lazily, with the maps
/// `F^i(eps_{F^j(B)})` memoized.
#[derive(Clone, Debug)]
pub struct BarConstruction {
    m: Bimodule,
    cap: usize,
    base: Bimodule,
    /// `homs[k] = Hom_B(M, F^k(B))`.
    homs: Vec<HomSpace>,
    /// `tensors[k] = M (x)_A homs[k]`, i.e. `F^{k+1}(B)`.
    tensors: Vec<TensorProduct>,
    /// `counits[k] = eps_{F^k(B)}`.
    counits: Vec<Matrix>,
    iterated: HashMap<(usize, usize), Matrix>,
    differentials: Vec<Matrix>,
}

impl BarConstruction {
    pub fn new(m: &Bimodule, cap: usize) -> Self {
        BarConstruction {
            m: m.clone(),
            cap,
            base: Bimodule::regular(Arc::clone(m.left_algebra())),
            homs: Vec::new(),
            tensors: Vec::new(),
            counits: Vec::new(),
            iterated: HashMap::new(),
            differentials: Vec::new(),
        }
    }

    pub fn module(&self) -> &Bimodule {
        &self.m
    }

    /// `F^k(B)`.
    pub fn object(&mut self, k: usize) -> Result<Bimodule> {
        if k == 0 {
            return Ok(self.base.clone());
        }
        self.ensure_tensor(k - 1)?;
        Ok(self.tensors[k - 1].module().clone())
    }

    /// `Hom_B(M, F^k(B))`.
    pub fn hom(&mut self, k: usize) -> Result<&HomSpace> {
        self.ensure_hom(k)?;
        Ok(&self.homs[k])
    }

    /// `F^{k+1}(B)` as a tensor product.
    pub fn tensor(&mut self, k: usize) -> Result<&TensorProduct> {
        self.ensure_tensor(k)?;
        Ok(&self.tensors[k])
    }

    /// `eps_{F^k(B)}: F^{k+1}(B) -> F^k(B)`.
    pub fn counit(&mut self, k: usize) -> Result<&Matrix> {
        self.ensure_tensor(k)?;
        Ok(&self.counits[k])
    }

    fn ensure_hom(&mut self, k: usize) -> Result<()> {
        while self.homs.len() <= k {
            let level = self.homs.len();
            let y = self.object(level)?;
            self.homs.push(hom_left(&self.m, &y)?);
        }
        Ok(())
    }

    fn ensure_tensor(&mut self, k: usize) -> Result<()> {
        while self.tensors.len() <= k {
            let level = self.tensors.len();
            self.ensure_hom(level)?;
            let hom = &self.homs[level];
            let what = format!("F^{}(B)", level + 1);
            let t = tensor_over_capped(&self.m, hom.module(), self.cap, &what)?;
            let eps = plain_evaluation(hom, self.m.dim()).mul(t.section());
            self.tensors.push(t);
            self.counits.push(eps);
        }
        Ok(())
    }

    /// `Hom_B(M, g)` for `g: F^src(B) -> F^tgt(B)`, in hom coordinates.
    pub fn hom_functor(&mut self, g: &Matrix, src: usize, tgt: usize) -> Result<Matrix> {
        self.ensure_hom(src.max(tgt))?;
        let (hs, ht) = (&self.homs[src], &self.homs[tgt]);
        let f = g.field();
        let mut out = Matrix::zeros(f, ht.dim(), hs.dim());
        for k in 0..hs.dim() {
            let image = g.mul(&hs.matrix(k));
            let c = ht.coords(&image).ok_or_else(|| {
                Error::Inconsistent("a composite of left-linear maps is not left-linear".into())
            })?;
            for (r, x) in c.into_iter().enumerate() {
                out.set(r, k, x);
            }
        }
        Ok(out)
    }

    /// `F(g): F^{src+1}(B) -> F^{tgt+1}(B)` for `g: F^src(B) -> F^tgt(B)`.
    pub fn functor(&mut self, g: &Matrix, src: usize, tgt: usize) -> Result<Matrix> {
        let hg = self.hom_functor(g, src, tgt)?;
        self.ensure_tensor(src.max(tgt))?;
        let id_m = Matrix::identity(g.field(), self.m.dim());
        let plain = id_m.kron(&hg);
        Ok(self.tensors[tgt]
            .projection()
            .mul(&plain)
            .mul(self.tensors[src].section()))
    }

    /// `F^i(eps_{F^j(B)}): F^{i+j+1}(B) -> F^{i+j}(B)`.
    fn iterated_counit(&mut self, i: usize, j: usize) -> Result<Matrix> {
        if let Some(m) = self.iterated.get(&(i, j)) {
            return Ok(m.clone());
        }
        let out = if i == 0 {
            self.counit(j)?.clone()
        } else {
            let inner = self.iterated_counit(i - 1, j)?;
            self.functor(&inner, i + j, i + j - 1)?
        };
        self.iterated.insert((i, j), out.clone());
        Ok(out)
    }

    /// `d_n = sum_i (-1)^i F^i(eps_{F^{n-i}(B)}): F^{n+1}(B) -> F^n(B)`,
    /// cross-checked against `d_n = eps_{F^n(B)} - F(d_{n-1})`.
    pub fn differential(&mut self, n: usize) -> Result<Matrix> {
        while self.differentials.len() <= n {
            let k = self.differentials.len();
            let mut d = self.iterated_counit(0, k)?;
            for i in 1..=k {
                let term = self.iterated_counit(i, k - i)?;
                d = if i % 2 == 0 { d.add(&term) } else { d.sub(&term) };
            }
            if k > 0 {
                let prev = self.differentials[k - 1].clone();
                let fd = self.functor(&prev, k, k - 1)?;
                let recursive = self.counit(k)?.sub(&fd);
                if recursive != d {
                    return Err(Error::Inconsistent(format!(
                        "alternating-sum and recursive forms of d_{k} disagree"
                    )));
                }
            }
            self.differentials.push(d);
        }
        Ok(self.differentials[n].clone())
    }

    /// `s: Hom_B(M, F^k(B)) -> Hom_B(M, F^{k+1}(B))`, `f -> (x -> [x (x) f])`.
    pub fn unit_map(&mut self, k: usize) -> Result<Matrix> {
        self.ensure_tensor(k)?;
        self.ensure_hom(k + 1)?;
        let dm = self.m.dim();
        let f = self.m.field();
        let hk = self.homs[k].dim();
        let proj = self.tensors[k].projection();
        let target = &self.homs[k + 1];
        let rows = proj.rows();
        let mut out = Matrix::zeros(f, target.dim(), hk);
        for j in 0..hk {
            let map = Matrix::from_fn(f, rows, dm, |r, i| proj.get(r, i * hk + j).clone());
            let c = target
                .coords(&map)
                .ok_or_else(|| Error::Inconsistent("x -> [x (x) f] is not left-linear".into()))?;
            for (r, x) in c.into_iter().enumerate() {
                out.set(r, j, x);
            }
        }
        Ok(out)
    }
}

fn require_generator(m: &Bimodule) -> Result<()> {
    if !is_generator(m)?.is_generator {
        return Err(Error::Precondition(
            "M is not a generator, so the bar construction is not a resolution".into(),
        ));
    }
    Ok(())
}

/// The bar resolution `P_n = F^{n+1}(B)` for `n < depth`, together with the
/// construction it came from.
#[derive(Clone, Debug)]
pub struct BarResolution {
    pub complex: ChainComplex,
    pub construction: BarConstruction,
}

pub fn bar_resolution(m: &Bimodule, depth: usize, cap: usize) -> Result<BarResolution> {
    if depth == 0 {
        return Err(Error::Precondition("bar resolution depth must be at least 1".into()));
    }
    require_generator(m)?;
    let mut c = BarConstruction::new(m, cap);
    let base = c.object(0)?;
    let mut objects: Vec<Bimodule> = Vec::with_capacity(depth);
    let mut differentials = Vec::with_capacity(depth);
    for n in 0..depth {
        let p = c.object(n + 1)?;
        let target = if n == 0 { base.clone() } else { objects[n - 1].clone() };
        let d = c.differential(n)?;
        differentials.push(BimoduleMap::new(p.clone(), target, d)?);
        objects.push(p);
    }
    let complex = ChainComplex {
        objects,
        augmentation_target: base,
        differentials,
    };
    if !complex.squares_to_zero() {
        return Err(Error::Inconsistent("bar differentials do not square to zero".into()));
    }
    Ok(BarResolution {
        complex,
        construction: c,
    })
}

/// Outcome of the contracting homotopy identities after applying `Hom_B(M, -)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyReport {
    /// `(n, holds)` for `n = -1, 0, .., depth - 1`.
    pub identities: Vec<(i64, bool)>,
}

impl HomotopyReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(|(_, ok)| *ok)
    }
}

/// Checks `Hom(d_0) s_{-1} = id` and `Hom(d_{n+1}) s_n + s_{n-1} Hom(d_n) = id`.
pub fn homotopy_check(m: &Bimodule, depth: usize, cap: usize) -> Result<HomotopyReport> {
    require_generator(m)?;
    let mut c = BarConstruction::new(m, cap);
    let mut identities = Vec::with_capacity(depth + 1);
    // hd[n] = Hom(d_n): H_{n+1} -> H_n, s[k]: H_k -> H_{k+1} (s_{k-1} in the usual indexing)
    let mut hd = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let d = c.differential(n)?;
        hd.push(c.hom_functor(&d, n + 1, n)?);
    }
    let s: Vec<Matrix> = (0..=depth).map(|k| c.unit_map(k)).collect::<Result<_>>()?;
    identities.push((-1, hd[0].mul(&s[0]).is_identity()));
    for n in 0..depth {
        let lhs = hd[n + 1].mul(&s[n + 1]).add(&s[n].mul(&hd[n]));
        identities.push((n as i64, lhs.is_identity()));
    }
    Ok(HomotopyReport { identities })
}

/// `Omega^0 = B`, `Omega^n = ker d_{n-1}` inside `P_{n-1}`; returned with
/// its inclusion matrix.
pub fn syzygy(m: &Bimodule, n: usize, cap: usize) -> Result<(Bimodule, Matrix)> {
    if n == 0 {
        require_generator(m)?;
        let b = Bimodule::regular(Arc::clone(m.left_algebra()));
        let id = Matrix::identity(b.field(), b.dim());
        return Ok((b, id));
    }
    let res = bar_resolution(m, n, cap)?;
    res.complex.differentials[n - 1].kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;
    use crate::DEFAULT_DIM_CAP;

    const Q: Field = Field::Rationals;

    #[test]
    fn ground_field_complex() {
        let r = bar_resolution(&fixtures::fx1(Q), 4, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(r.complex.dims(), vec![1, 1, 1, 1]);
        assert!(r.complex.is_exact());
        for (n, d) in r.complex.differentials.iter().enumerate() {
            // identity on odd-length sums, zero on even
            assert_eq!(d.matrix().is_zero(), n % 2 == 1);
        }
    }

    #[test]
    fn dual_numbers_dims() {
        let r = bar_resolution(&fixtures::fx3(Q), 3, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(r.complex.dims(), vec![4, 8, 16]);
        assert!(r.complex.maps_are_valid());
        assert!(r.complex.is_exact());
    }

    #[test]
    fn simple_module_dims() {
        let r = bar_resolution(&fixtures::fx5(Q), 3, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(r.complex.dims(), vec![4, 4, 4]);
        assert!(r.complex.is_exact());
    }

    #[test]
    fn homotopies_hold() {
        for m in [fixtures::fx1(Q), fixtures::fx3(Q), fixtures::fx5(Q)] {
            assert!(homotopy_check(&m, 2, DEFAULT_DIM_CAP).unwrap().holds());
        }
    }

    #[test]
    fn syzygies() {
        assert_eq!(syzygy(&fixtures::fx5(Q), 1, DEFAULT_DIM_CAP).unwrap().0.dim(), 0);
        assert_eq!(syzygy(&fixtures::fx3(Q), 1, DEFAULT_DIM_CAP).unwrap().0.dim(), 2);
        assert_eq!(syzygy(&fixtures::fx3(Q), 0, DEFAULT_DIM_CAP).unwrap().0.dim(), 2);
    }

    #[test]
    fn non_generator_rejected() {
        let t = fixtures::trivial_over_dual_numbers(Q);
        assert!(matches!(
            bar_resolution(&t, 2, DEFAULT_DIM_CAP),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cap_reported() {
        let err = bar_resolution(&fixtures::fx3(Q), 3, 10).unwrap_err();
        assert!(matches!(err, Error::DimensionCap { .. }));
    }
}
