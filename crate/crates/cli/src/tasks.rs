//! Task execution. Each task produces one JSON object with a stable key
//! order: `op`, `args`, options, `verdict`, then op-specific detail.

use std::time::Instant;

use relhoch::bimodule::{
    evaluation_map, is_fg_projective_left, is_generator, GeneratorWitness, ProjectivityVerdict,
};
use relhoch::diagnostics::{
    diagnose, hdim_upto, is_formally_smooth_bimodule, is_formally_smooth_extension,
    is_rel_projective, is_separable_bimodule, is_separable_extension, morita_check, smooth_product,
    static_criteria, sugano_check, CasimirVerdict, HdimResult, SectionVerdict, SmoothRoute,
    SmoothVerdict,
};
use relhoch::homology::{homotopy_check, m_hochschild, phi_check, rel_hochschild, syzygy, CohomologyResult, PhiReport};
use relhoch::{Bimodule, Field, Matrix, Rational};
use serde_json::{json, Map, Value};

use crate::document::{Document, RawTask};

pub const DEFAULT_NMAX: usize = 2;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub nmax: usize,
    pub dim_cap: usize,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            nmax: DEFAULT_NMAX,
            dim_cap: relhoch::DEFAULT_DIM_CAP,
            timings: false,
        }
    }
}

/// Every op the runner understands, with its argument count.
pub const OPS: &[(&str, usize)] = &[
    ("generator", 1),
    ("fg_projective", 1),
    ("separable", 1),
    ("rel_projective", 2),
    ("smooth", 1),
    ("hdim", 1),
    ("separable_extension", 1),
    ("smooth_extension", 1),
    ("hochschild", 2),
    ("rel_hochschild", 2),
    ("morita", 2),
    ("phi", 2),
    ("sugano", 1),
    ("static", 1),
    ("smooth_product", 2),
    ("homotopy", 1),
    ("syzygy", 1),
    ("report", 1),
];

/// Exact values: `"p/q"` strings over `Q`, integers over `F_p`.
pub fn scalar(field: Field, x: &Rational) -> Value {
    match field {
        Field::Rationals => Value::String(x.to_string()),
        Field::Prime(_) => {
            let (n, _) = x.as_small().expect("residues are small integers");
            Value::from(n)
        }
    }
}

pub fn vector(field: Field, v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| scalar(field, x)).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.field(), m.row(i))).collect())
}

fn opt_vector(field: Field, v: &Option<Vec<Rational>>) -> Value {
    v.as_ref().map_or(Value::Null, |v| vector(field, v))
}

/// Outcome of one task, before assembly into the report.
struct Outcome {
    verdict: Value,
    detail: Map<String, Value>,
}

impl Outcome {
    fn new(verdict: Value) -> Self {
        Outcome {
            verdict,
            detail: Map::new(),
        }
    }

    fn with(mut self, key: &str, v: Value) -> Self {
        self.detail.insert(key.into(), v);
        self
    }
}

fn casimir(field: Field, v: &CasimirVerdict) -> Outcome {
    Outcome::new(Value::Bool(v.holds))
        .with("witness", json!({
            "casimir": opt_vector(field, &v.casimir),
            "obstruction": opt_vector(field, &v.obstruction),
            "revalidated": v.revalidate(),
        }))
        .with("dims", json!({ "space": v.space_dim, "centralizer": v.centralizer_dim }))
}

fn section(field: Field, v: &SectionVerdict) -> Value {
    json!({
        "section": v.section.as_ref().map_or(Value::Null, matrix),
        "obstruction": opt_vector(field, &v.obstruction),
        "hom_dim": v.hom_dim,
        "revalidated": v.revalidate(),
    })
}

fn smooth(field: Field, v: &SmoothVerdict) -> Outcome {
    let (route, witness) = match &v.route {
        SmoothRoute::EvInjective { rank, tensor_dim } => {
            ("ev_injective", json!({ "rank": rank, "tensor_dim": tensor_dim }))
        }
        SmoothRoute::Separable(c) => ("separable", casimir(field, c).detail["witness"].clone()),
        SmoothRoute::KernelSection(s) => ("kernel_section", section(field, s)),
    };
    Outcome::new(Value::Bool(v.holds))
        .with("route", Value::from(route))
        .with("witness", witness)
        .with("dims", json!({ "kernel": v.kernel_dim }))
        .with("revalidated", Value::Bool(v.revalidate()))
}

fn hdim(h: &HdimResult) -> Outcome {
    let steps: Vec<Value> = h
        .steps
        .iter()
        .map(|s| json!({ "n": s.n, "syzygy_dim": s.syzygy_dim, "projective": s.projective }))
        .collect();
    Outcome::new(Value::String(h.value.to_string()))
        .with("steps", Value::Array(steps))
        .with("inferred", Value::Bool(h.inferred))
}

fn projectivity(field: Field, v: &ProjectivityVerdict) -> Outcome {
    let witness = match &v.dual_basis {
        Some(db) => json!({
            "xs": db.xs.iter().map(|x| vector(field, x)).collect::<Vec<_>>(),
            "fs": db.fs.iter().map(matrix).collect::<Vec<_>>(),
        }),
        None => json!({ "obstruction": opt_vector(field, &v.obstruction) }),
    };
    Outcome::new(Value::Bool(v.holds)).with("witness", witness)
}

fn cohomology(c: &CohomologyResult) -> Outcome {
    let degrees: Vec<Value> = c
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "cochains": d.cochain_dim,
                "cocycles": d.cocycle_dim,
                "coboundaries": d.coboundary_dim,
                "dim": d.dim,
            })
        })
        .collect();
    Outcome::new(json!(c.dims())).with("degrees", Value::Array(degrees))
}

fn phi(p: &PhiReport) -> Value {
    json!({
        "holds": p.holds(),
        "degrees": p.degrees.iter().map(|d| json!({
            "degree": d.degree,
            "source_dim": d.source_dim,
            "target_dim": d.target_dim,
            "isomorphism": d.is_isomorphism,
        })).collect::<Vec<_>>(),
        "base_square": p.base_square,
        "squares": p.squares.iter().map(|(n, ok)| json!({ "degree": n, "commutes": ok })).collect::<Vec<_>>(),
        "coefficient_dim": p.coefficient_dim,
        "endomorphism_dim": p.endomorphism_dim,
    })
}

fn generator_outcome(field: Field, m: &Bimodule) -> relhoch::Result<Outcome> {
    let g = is_generator(m)?;
    let unit = m.left_algebra().unit().to_vec();
    let witness = match &g.witness {
        GeneratorWitness::Preimage(x) => json!({ "preimage": vector(field, x) }),
        GeneratorWitness::Cokernel(phi) => json!({ "cokernel": vector(field, phi) }),
    };
    Ok(Outcome::new(Value::Bool(g.is_generator))
        .with("witness", witness)
        .with("revalidated", Value::Bool(g.witness.revalidate(g.ev.map.matrix(), &unit)))
        .with("dims", json!({ "dual": g.ev.hom.dim(), "tensor": g.ev.tensor.dim() })))
}

fn execute(doc: &Document, task: &RawTask, opts: &RunOptions) -> Result<Outcome, String> {
    let field = doc.field;
    let cap = opts.dim_cap;
    let nmax = task.nmax.unwrap_or(opts.nmax);
    let arity = OPS
        .iter()
        .find(|(name, _)| *name == task.op)
        .map(|(_, n)| *n)
        .ok_or_else(|| format!("unknown op {:?}", task.op))?;
    if task.args.len() != arity {
        return Err(format!(
            "{} takes {arity} argument(s), found {}",
            task.op,
            task.args.len()
        ));
    }
    let bim = |i: usize| doc.bimodule(&task.args[i]);
    let map = |i: usize| doc.ring_map(&task.args[i]);
    let core = |e: relhoch::Error| e.to_string();
    let out = match task.op.as_str() {
        "generator" => generator_outcome(field, bim(0)?).map_err(core)?,
        "fg_projective" => projectivity(field, &is_fg_projective_left(bim(0)?).map_err(core)?),
        "separable" => casimir(field, &is_separable_bimodule(bim(0)?).map_err(core)?),
        "rel_projective" => {
            let v = is_rel_projective(bim(0)?, bim(1)?, cap).map_err(core)?;
            Outcome::new(Value::Bool(v.holds)).with("witness", section(field, &v))
        }
        "smooth" => smooth(field, &is_formally_smooth_bimodule(bim(0)?, cap).map_err(core)?),
        "hdim" => hdim(&hdim_upto(bim(0)?, nmax, cap).map_err(core)?),
        "separable_extension" => casimir(field, &is_separable_extension(map(0)?).map_err(core)?),
        "smooth_extension" => {
            let v = is_formally_smooth_extension(map(0)?, cap).map_err(core)?;
            Outcome::new(Value::Bool(v.holds))
                .with("witness", section(field, &v.section))
                .with("dims", json!({ "kernel": v.kernel_dim }))
        }
        "hochschild" => cohomology(&m_hochschild(bim(0)?, bim(1)?, nmax, cap).map_err(core)?),
        "rel_hochschild" => cohomology(&rel_hochschild(map(0)?, bim(1)?, nmax, cap).map_err(core)?),
        "morita" => {
            let r = morita_check(bim(0)?, bim(1)?, nmax, cap).map_err(core)?;
            Outcome::new(Value::Bool(r.holds()))
                .with("m_side", json!(r.m_side))
                .with("relative_side", json!(r.relative_side))
                .with("dims", json!({ "endomorphisms": r.endomorphism_dim, "coefficients": r.coefficient_dim }))
                .with("phi", phi(&r.phi))
        }
        "phi" => {
            let r = phi_check(bim(0)?, bim(1)?, nmax, cap).map_err(core)?;
            Outcome::new(Value::Bool(r.holds())).with("phi", phi(&r))
        }
        "sugano" => {
            let r = sugano_check(bim(0)?).map_err(core)?;
            Outcome::new(Value::Bool(r.consistent())).with(
                "sides",
                json!({
                    "applicable": r.applicable,
                    "separable": r.separable,
                    "generator": r.generator,
                    "extension_separable": r.extension_separable,
                }),
            )
        }
        "static" => {
            let r = static_criteria(bim(0)?).map_err(core)?;
            Outcome::new(Value::Bool(r.consistent())).with(
                "criteria",
                json!({
                    "ev_over_s_injective": r.ev_over_s_injective,
                    "ev_over_s_surjective": r.ev_over_s_surjective,
                    "trace_dim": r.trace_dim,
                    "trace_static": r.trace_static,
                    "generator": r.generator,
                    "bs_separable": r.bs_separable,
                }),
            )
        }
        "smooth_product" => {
            let mode = task.mode.unwrap_or(1);
            let r = smooth_product(bim(0)?, bim(1)?, mode, cap).map_err(core)?;
            let hyps: Vec<Value> = r
                .hypotheses
                .iter()
                .map(|h| json!({ "name": h.name, "holds": h.holds }))
                .collect();
            let s = smooth(field, &r.smooth);
            Outcome::new(Value::Bool(r.smooth.holds))
                .with("mode", Value::from(mode))
                .with("hypotheses", Value::Array(hyps))
                .with("consistent", Value::Bool(r.consistent()))
                .with("dims", json!({ "product": r.module.dim() }))
                .with("smooth", s.detail.into())
        }
        "homotopy" => {
            let depth = task.depth.unwrap_or(nmax + 1);
            let r = homotopy_check(bim(0)?, depth, cap).map_err(core)?;
            let ids: Vec<Value> = r
                .identities
                .iter()
                .map(|(n, ok)| json!({ "n": n, "holds": ok }))
                .collect();
            Outcome::new(Value::Bool(r.holds())).with("identities", Value::Array(ids))
        }
        "syzygy" => {
            let n = task.depth.unwrap_or(1);
            let (omega, _) = syzygy(bim(0)?, n, cap).map_err(core)?;
            Outcome::new(Value::from(omega.dim())).with("n", Value::from(n))
        }
        "report" => {
            let m = bim(0)?;
            let r = diagnose(m, nmax, cap).map_err(core)?;
            let ev_injective = evaluation_map(m).map_err(core)?.map.is_injective();
            let dims: Map<String, Value> =
                r.dims.iter().map(|(k, v)| (k.clone(), Value::from(*v))).collect();
            Outcome::new(json!({
                "generator": r.generator,
                "fg_projective": r.fg_projective,
                "separable": r.separable.holds,
                "smooth": r.smooth.holds,
                "ev_injective": ev_injective,
                "hdim": r.hdim.as_ref().map_or(Value::Null, |h| Value::String(h.value.to_string())),
            }))
            .with("dims", Value::Object(dims))
            .with("separable", casimir(field, &r.separable).detail.into())
            .with("smooth", smooth(field, &r.smooth).detail.into())
            .with("hdim", r.hdim.as_ref().map_or(Value::Null, |h| hdim(h).detail.into()))
        }
        _ => unreachable!("op table covers every arm"),
    };
    Ok(out)
}

/// Runs one task and assembles its report entry. The second value is
/// `Some(pass)` when the task carries an expectation.
pub fn run_task(doc: &Document, task: &RawTask, opts: &RunOptions) -> (Value, Option<bool>) {
    let start = Instant::now();
    let result = execute(doc, task, opts);
    let elapsed = start.elapsed();
    let mut obj = Map::new();
    obj.insert("op".into(), Value::from(task.op.clone()));
    obj.insert("args".into(), json!(task.args));
    if let Some(n) = task.nmax {
        obj.insert("nmax".into(), Value::from(n));
    }
    if let Some(m) = task.mode {
        obj.insert("mode".into(), Value::from(m));
    }
    if let Some(d) = task.depth {
        obj.insert("depth".into(), Value::from(d));
    }
    let pass = match result {
        Ok(out) => {
            let pass = task.expect.as_ref().map(|e| *e == out.verdict);
            obj.insert("verdict".into(), out.verdict);
            obj.extend(out.detail);
            pass
        }
        Err(e) => {
            obj.insert("verdict".into(), Value::Null);
            obj.insert("error".into(), Value::from(e));
            task.expect.as_ref().map(|_| false)
        }
    };
    if let Some(e) = &task.expect {
        obj.insert("expect".into(), e.clone());
        obj.insert("expect_met".into(), Value::Bool(pass == Some(true)));
    }
    if opts.timings {
        obj.insert("timing_ms".into(), json!(elapsed.as_secs_f64() * 1e3));
    }
    (Value::Object(obj), pass)
}
