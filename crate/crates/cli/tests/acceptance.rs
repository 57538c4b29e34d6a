//! One PASS/FAIL line per acceptance criterion. Every comparison is exact:
//! dimensions and verdicts must match, witnesses must satisfy their defining
//! identities over `BigRational`.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::process::ExitCode;
use std::sync::Arc;

use num_traits::{One, Zero};
use oracle::{Alg, Bim, Mat, Q};
use relhoch::bimodule::evaluation_map;
use relhoch::diagnostics::{
    diagnose, is_formally_smooth_bimodule, is_formally_smooth_extension, is_rel_projective,
    is_separable_bimodule, is_separable_extension, morita_check, CasimirVerdict, SectionVerdict,
    SmoothRoute,
};
use relhoch::homology::{bar_resolution, homotopy_check, m_hochschild, BarConstruction};
use relhoch::structures::multiplication_map;
use relhoch::{fixtures, Algebra, Bimodule, Field, Matrix, Rational, RingMap, DEFAULT_DIM_CAP};
use relhoch_cli::{corpus, run, Document, RunOptions};

const F: Field = Field::Rationals;
const CAP: usize = DEFAULT_DIM_CAP;
/// Degree bound for the classification grid.
const GRID_NMAX: usize = 3;
/// Deepest resolution checked for health.
const MAX_DEPTH: usize = 3;
/// Size bound on the Hom spaces built while choosing a health-check depth.
const MAX_HOM_UNKNOWNS: usize = 1024;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn q(x: &Rational) -> Q {
    Q::from(x)
}

fn mat(m: &Matrix) -> Mat {
    (0..m.rows()).map(|i| m.row(i).iter().map(q).collect()).collect()
}

fn vecq(v: &[Rational]) -> Vec<Q> {
    v.iter().map(q).collect()
}

fn apply(m: &Mat, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

fn compose(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn is_identity(m: &Mat) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

fn bim(m: &Bimodule) -> Bim {
    Bim {
        dim: m.dim(),
        left: m.left_actions().iter().map(mat).collect(),
        right: m.right_actions().iter().map(mat).collect(),
    }
}

/// `s` is invariant in `space` and `map(s) = unit`.
fn casimir_ok(v: &CasimirVerdict, space: &Bimodule, unit: &[Rational]) -> bool {
    let Some(s) = &v.casimir else { return false };
    let s = vecq(s);
    let x = bim(space);
    x.left.iter().zip(&x.right).all(|(l, r)| apply(l, &s) == apply(r, &s))
        && apply(&mat(v.map()), &s) == vecq(unit)
}

/// `epi o sigma = id` and `sigma` commutes with every basis action.
fn section_ok(v: &SectionVerdict) -> bool {
    let Some(sigma) = &v.section else { return false };
    let sigma = mat(sigma);
    let (src, tgt) = (bim(v.epi().source()), bim(v.epi().target()));
    let commutes = |a: &[Mat], b: &[Mat]| {
        a.iter().zip(b).all(|(x, y)| compose(x, &sigma) == compose(&sigma, y))
    };
    is_identity(&compose(&mat(v.epi().matrix()), &sigma))
        && commutes(&src.left, &tgt.left)
        && commutes(&src.right, &tgt.right)
}

fn regular_of(m: &Bimodule) -> Bimodule {
    Bimodule::regular(m.left_algebra().clone())
}

fn over_ground(alg: Algebra) -> (Bimodule, RingMap) {
    let b = Arc::new(alg);
    (fixtures::regular_over_ground((*b).clone()), RingMap::unit_map(b))
}

/// Standard fixtures plus the randomized corpus.
fn corpus_bimodules() -> Vec<(String, Bimodule)> {
    let mut all: Vec<(String, Bimodule)> = fixtures::standard(F)
        .into_iter()
        .map(|(n, m)| (n.to_string(), m))
        .collect();
    all.extend(corpus::randomized_bimodules(corpus::RANDOM_SEED));
    all
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: relhoch::Error) -> String {
    e.to_string()
}

fn c1_oracle_cohomology() -> Outcome {
    let want = [("FX2", [2, 0, 0]), ("FX3", [2, 1, 1]), ("FX4", [1, 0, 0])];
    let all = fixtures::standard(F);
    let mut out = Vec::new();
    for (name, expected) in want {
        let m = &all.iter().find(|(n, _)| *n == name).unwrap().1;
        let alg = Alg::from(m.left_algebra());
        let classical = oracle::hochschild_dims(&alg, &oracle::regular(&alg), 2);
        let engine = m_hochschild(m, &regular_of(m), 2, CAP).map_err(err)?.dims();
        ensure(engine == classical && classical == expected, || {
            format!("{name}: engine {engine:?}, classical {classical:?}, expected {expected:?}")
        })?;
        out.push(format!("{name} {engine:?}"));
    }
    Ok(out.join(", "))
}

fn c2_morita() -> Outcome {
    let mut checked = 0;
    for (name, m) in [("FX5", fixtures::fx5(F)), ("FX6", fixtures::fx6(F))] {
        let (ker, _) = evaluation_map(&m).map_err(err)?.map.kernel().map_err(err)?;
        for (probe, n) in [("B", regular_of(&m)), ("Ker ev", ker)] {
            let r = morita_check(&m, &n, 2, CAP).map_err(err)?;
            let squares = r.phi.base_square
                && r.phi.squares.len() == 2
                && r.phi.squares.iter().all(|(_, ok)| *ok);
            ensure(r.m_side == r.relative_side && r.m_side.len() == 3, || {
                format!("{name}, N = {probe}: {:?} vs {:?}", r.m_side, r.relative_side)
            })?;
            ensure(squares && r.holds(), || format!("{name}, N = {probe}: a square fails"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (M, N) pairs, n = 0..2"))
}

fn c3_grid() -> Outcome {
    let want = [
        ("FX2", true, true, true, "0"),
        ("FX3", true, false, false, "> 3"),
        ("FX4", true, false, true, "1"),
        ("FX5", true, true, true, "0"),
    ];
    let all = fixtures::standard(F);
    for (name, generator, separable, smooth, hdim) in want {
        let m = &all.iter().find(|(n, _)| *n == name).unwrap().1;
        let r = diagnose(m, GRID_NMAX, CAP).map_err(err)?;
        let got_hdim = r.hdim.as_ref().map(|h| h.value.to_string());
        let got = (r.generator, r.separable.holds, r.smooth.holds, got_hdim.as_deref());
        ensure(got == (generator, separable, smooth, Some(hdim)), || {
            format!("{name}: got {got:?}")
        })?;
        if name != "FX5" {
            let alg = Alg::from(m.left_algebra());
            let sep = oracle::separable_over_ground(&alg);
            let dim = oracle::hochschild_dimension_upto(&alg, GRID_NMAX);
            let oracle_hdim = dim.map_or(format!("> {GRID_NMAX}"), |d| d.to_string());
            ensure(sep == separable && oracle_hdim == hdim, || {
                format!("{name}: oracle separable {sep}, hdim {oracle_hdim}")
            })?;
        }
    }
    Ok("FX2..FX5 match".into())
}

fn c4_implications() -> Outcome {
    let all = corpus_bimodules();
    let mut failures = Vec::new();
    for (name, m) in &all {
        let ev = evaluation_map(m).map_err(err)?;
        let injective = ev.map.rank() == ev.tensor.dim();
        let sep = is_separable_bimodule(m).map_err(err)?.holds;
        let smooth = is_formally_smooth_bimodule(m, CAP).map_err(err)?.holds;
        let h = relhoch::diagnostics::hdim_upto(m, 1, CAP).map_err(err)?;
        let hdim0 = h.at_most(0) == Some(true);
        let hdim1 = h.at_most(1) == Some(true);
        let checks = [
            ("separable => smooth", !sep || smooth),
            ("ev injective => smooth", !injective || smooth),
            ("separable <=> hdim 0", sep == hdim0),
            ("smooth <=> hdim <= 1", smooth == hdim1),
        ];
        for (what, ok) in checks {
            if !ok {
                failures.push(format!("{name}: {what}"));
            }
        }
    }
    ensure(all.len() >= 10, || format!("only {} fixtures", all.len()))?;
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} fixtures, 0 counterexamples", all.len()))
}

/// Deepest `depth <= MAX_DEPTH` for which the homotopy check stays within
/// `MAX_HOM_UNKNOWNS`. The check at depth `d` needs `Hom_B(M, F^{d+1}(B))`,
/// and `dim F^{d+1}(B) <= dim M * dim Hom_B(M, F^d(B))`.
fn health_depth(m: &Bimodule) -> Result<usize, String> {
    let mut c = BarConstruction::new(m, CAP);
    let mut depth = 0;
    while depth < MAX_DEPTH {
        let bound = m.dim() * m.dim() * c.hom(depth + 1).map_err(err)?.dim();
        if bound > MAX_HOM_UNKNOWNS {
            break;
        }
        depth += 1;
    }
    ensure(depth > 0, || "no admissible depth".into())?;
    Ok(depth)
}

fn c5_resolution_health() -> Outcome {
    let mut depths = Vec::new();
    for (name, m) in corpus_bimodules() {
        let depth = health_depth(&m)?;
        let res = bar_resolution(&m, depth, CAP).map_err(err)?;
        ensure(res.complex.squares_to_zero(), || format!("{name}: d o d != 0"))?;
        ensure(res.complex.maps_are_valid(), || format!("{name}: invalid differential"))?;
        let h = homotopy_check(&m, depth, CAP).map_err(err)?;
        ensure(h.holds(), || format!("{name}: homotopy identities {:?}", h.identities))?;
        let b = regular_of(&m);
        let h0 = m_hochschild(&m, &b, 0, CAP).map_err(err)?.dims()[0];
        let inv = oracle::invariants_dim(&bim(&b));
        ensure(h0 == inv, || format!("{name}: H^0 = {h0}, invariants {inv}"))?;
        depths.push(depth);
    }
    Ok(format!("{} fixtures, depths {depths:?}", depths.len()))
}

fn c6_witnesses() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut record = |name: &str, what: &str, ok: bool| {
        checked += 1;
        if !ok {
            bad.push(format!("{name}: {what}"));
        }
    };
    for (name, m) in corpus_bimodules() {
        let ev = evaluation_map(&m).map_err(err)?;
        let unit = m.left_algebra().unit().to_vec();
        let sep = is_separable_bimodule(&m).map_err(err)?;
        if sep.holds {
            record(&name, "casimir", casimir_ok(&sep, ev.tensor.module(), &unit));
        }
        let smooth = is_formally_smooth_bimodule(&m, CAP).map_err(err)?;
        if smooth.holds {
            let ok = match &smooth.route {
                SmoothRoute::EvInjective { .. } => {
                    oracle::rank(&mat(ev.map.matrix()), ev.tensor.dim()) == ev.tensor.dim()
                }
                SmoothRoute::Separable(c) => casimir_ok(c, ev.tensor.module(), &unit),
                SmoothRoute::KernelSection(s) => section_ok(s),
            };
            record(&name, "smoothness", ok);
        }
        let rel = is_rel_projective(&regular_of(&m), &m, CAP).map_err(err)?;
        if rel.holds {
            record(&name, "section of eps_B", section_ok(&rel));
        }
        let h = relhoch::diagnostics::hdim_upto(&m, 1, CAP).map_err(err)?;
        for step in h.steps.iter().filter(|s| s.projective) {
            record(&name, &format!("syzygy {} section", step.n), section_ok(&step.section));
        }
    }
    let mut maps: Vec<(String, RingMap)> = vec![("A -> KxK".into(), fixtures::diagonal_inclusion(F))];
    for (name, alg) in [
        ("KxK", Algebra::product_of_fields(F, 2)),
        ("Dual", Algebra::truncated_polynomial(F, 2)),
        ("Tri", Algebra::upper_triangular(F, 2)),
        ("M2", Algebra::matrix_algebra(F, 2)),
    ] {
        let b = Arc::new(alg);
        maps.push((format!("k -> {name}"), RingMap::unit_map(b.clone())));
        maps.push((format!("id {name}"), RingMap::identity(b)));
    }
    for (name, f) in &maps {
        let v = is_separable_extension(f).map_err(err)?;
        if v.holds {
            let (t, _) = multiplication_map(f.target(), f).map_err(err)?;
            record(name, "extension casimir", casimir_ok(&v, t.module(), f.target().unit()));
        }
        let s = is_formally_smooth_extension(f, CAP).map_err(err)?;
        if s.holds {
            record(name, "extension section", section_ok(&s.section));
        }
    }
    let failed = bad.len();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{}/{} witnesses re-checked", checked - failed, checked))
}

fn c7_smoothness_formulations() -> Outcome {
    let mut out = Vec::new();
    for (name, alg) in [
        ("FX2", Algebra::product_of_fields(F, 2)),
        ("FX3", Algebra::truncated_polynomial(F, 2)),
        ("FX4", Algebra::upper_triangular(F, 2)),
    ] {
        let (m, unit) = over_ground(alg);
        let bimodule = is_formally_smooth_bimodule(&m, CAP).map_err(err)?.holds;
        let extension = is_formally_smooth_extension(&unit, CAP).map_err(err)?.holds;
        ensure(bimodule == extension, || {
            format!("{name}: bimodule {bimodule}, extension {extension}")
        })?;
        out.push(format!("{name} {bimodule}"));
    }
    Ok(out.join(", "))
}

fn c8_determinism() -> Outcome {
    let reports = || -> Vec<String> {
        corpus::documents()
            .into_iter()
            .map(|(_, raw)| {
                let doc = Document::from_raw(raw).expect("corpus documents validate");
                run(&doc, &RunOptions::default()).to_json_string()
            })
            .collect()
    };
    let (a, b) = (reports(), reports());
    ensure(a == b, || "reports differ between runs".into())?;
    let bytes: usize = a.iter().map(String::len).sum();
    Ok(format!("{} documents, {bytes} bytes identical", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Check; 8] = [
        ("cohomology agrees with the classical complex", c1_oracle_cohomology),
        ("Morita comparison on FX5 and FX6", c2_morita),
        ("classification grid", c3_grid),
        ("implications on the corpus", c4_implications),
        ("resolution health", c5_resolution_health),
        ("witness re-validation", c6_witnesses),
        ("bimodule and extension smoothness agree", c7_smoothness_formulations),
        ("deterministic reports", c8_determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {title} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
