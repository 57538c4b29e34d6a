//! Input documents: a field, named algebras, bimodules and ring maps given
//! by explicit structure constants, and a list of tasks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use relhoch::{Algebra, Bimodule, Field, Matrix, Rational, RingMap};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// A field element as written in a document: a string `"p/q"` or an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry(pub String);

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d) {
            Ok(Raw::Text(s)) => Ok(Entry(s)),
            Ok(Raw::Int(n)) => Ok(Entry(n.to_string())),
            Err(_) => Err(serde::de::Error::custom(
                "expected a field element (string \"p/q\" or integer)",
            )),
        }
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub dim: usize,
    pub unit: Vec<Entry>,
    /// `mult[i][j]` is the coordinate vector of `e_i e_j`.
    pub mult: Vec<Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBimodule {
    pub left: String,
    pub right: String,
    pub dim: usize,
    /// One `dim x dim` matrix per basis element of the left algebra.
    pub left_action: Vec<Vec<Vec<Entry>>>,
    /// One matrix per basis element of the right algebra, acting on columns
    /// as `v -> v . a`.
    pub right_action: Vec<Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRingMap {
    pub source: String,
    pub target: String,
    /// `dim target x dim source`; column `j` is the image of `e_j`.
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTask {
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Expected verdict, checked under `--assert`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub field: String,
    #[serde(default)]
    pub algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, RawBimodule>,
    #[serde(default)]
    pub ring_maps: BTreeMap<String, RawRingMap>,
    #[serde(default)]
    pub tasks: Vec<RawTask>,
}

/// A parsed and validated document.
#[derive(Clone, Debug)]
pub struct Document {
    pub field: Field,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub ring_maps: BTreeMap<String, RingMap>,
    pub tasks: Vec<RawTask>,
    /// The input with every entry rewritten in canonical form.
    pub normalized: RawDocument,
}

pub fn parse_field(s: &str) -> Result<Field, CliError> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    let p = t
        .strip_prefix("F_")
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| CliError::schema("field", format!("expected \"Q\" or \"F_p\", found {s:?}")))?;
    Field::prime(p).map_err(|e| CliError::Validation {
        path: "field".into(),
        source: e,
    })
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rationals => "Q".into(),
        Field::Prime(p) => format!("F_{p}"),
    }
}

/// A path into the document for error messages, e.g. `algebras.B.mult[1][0]`.
#[derive(Clone)]
struct Path(String);

impl Path {
    fn key(&self, k: &str) -> Path {
        Path(format!("{}.{k}", self.0))
    }

    fn idx(&self, i: usize) -> Path {
        Path(format!("{}[{i}]", self.0))
    }

    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::schema(self.0.clone(), message)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn entry(field: Field, e: &Entry, at: &Path) -> Result<Rational, CliError> {
    let x: Rational = e
        .0
        .parse()
        .map_err(|_| at.err(format!("{:?} is not an exact rational", e.0)))?;
    field
        .embed(&x)
        .map_err(|err| at.err(format!("{:?} is not an element of {field}: {err}", e.0)))
}

fn vector(field: Field, v: &[Entry], len: usize, at: &Path) -> Result<Vec<Rational>, CliError> {
    if v.len() != len {
        return Err(at.err(format!("expected {len} entries, found {}", v.len())));
    }
    v.iter().enumerate().map(|(i, e)| entry(field, e, &at.idx(i))).collect()
}

fn matrix(
    field: Field,
    rows: &[Vec<Entry>],
    shape: (usize, usize),
    at: &Path,
) -> Result<Matrix, CliError> {
    if rows.len() != shape.0 {
        return Err(at.err(format!("expected {} rows, found {}", shape.0, rows.len())));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for (i, r) in rows.iter().enumerate() {
        data.extend(vector(field, r, shape.1, &at.idx(i))?);
    }
    Ok(Matrix::from_vec(field, shape.0, shape.1, data).expect("shape checked"))
}

fn actions(
    field: Field,
    mats: &[Vec<Vec<Entry>>],
    count: usize,
    dim: usize,
    at: &Path,
) -> Result<Vec<Matrix>, CliError> {
    if mats.len() != count {
        return Err(at.err(format!(
            "expected one matrix per basis element ({count}), found {}",
            mats.len()
        )));
    }
    mats.iter()
        .enumerate()
        .map(|(i, m)| matrix(field, m, (dim, dim), &at.idx(i)))
        .collect()
}

fn canonical(field: Field, x: &Rational) -> Entry {
    debug_assert!(field.contains(x));
    Entry(x.to_string())
}

fn entries(field: Field, v: &[Rational]) -> Vec<Entry> {
    v.iter().map(|x| canonical(field, x)).collect()
}

fn matrix_entries(field: Field, m: &Matrix) -> Vec<Vec<Entry>> {
    (0..m.rows()).map(|i| entries(field, m.row(i))).collect()
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &str, at: &Path) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| at.err(format!("unknown {kind} {name:?}")))
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        Self::from_raw(raw)
    }

    pub fn from_raw(raw: RawDocument) -> Result<Self, CliError> {
        let field = parse_field(&raw.field)?;
        let mut normalized = RawDocument {
            field: field_name(field),
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            ring_maps: BTreeMap::new(),
            tasks: raw.tasks.clone(),
        };

        let mut algebras = BTreeMap::new();
        for (name, a) in &raw.algebras {
            let at = Path("algebras".into()).key(name);
            if a.dim == 0 {
                return Err(at.key("dim").err("the zero ring is not allowed (dim must be >= 1)"));
            }
            let unit = vector(field, &a.unit, a.dim, &at.key("unit"))?;
            let mult_at = at.key("mult");
            if a.mult.len() != a.dim {
                return Err(mult_at.err(format!("expected {} rows, found {}", a.dim, a.mult.len())));
            }
            let mut table = Vec::with_capacity(a.dim);
            for (i, row) in a.mult.iter().enumerate() {
                let row_at = mult_at.idx(i);
                if row.len() != a.dim {
                    return Err(row_at.err(format!("expected {} products, found {}", a.dim, row.len())));
                }
                let products = row
                    .iter()
                    .enumerate()
                    .map(|(j, v)| vector(field, v, a.dim, &row_at.idx(j)))
                    .collect::<Result<Vec<_>, _>>()?;
                table.push(products);
            }
            let alg = Algebra::new(field, table.clone(), unit.clone()).map_err(|e| {
                CliError::Validation {
                    path: at.to_string(),
                    source: e,
                }
            })?;
            normalized.algebras.insert(
                name.clone(),
                RawAlgebra {
                    dim: a.dim,
                    unit: entries(field, &unit),
                    mult: table.iter().map(|r| r.iter().map(|v| entries(field, v)).collect()).collect(),
                },
            );
            algebras.insert(name.clone(), Arc::new(alg));
        }

        let mut ring_maps = BTreeMap::new();
        for (name, f) in &raw.ring_maps {
            let at = Path("ring_maps".into()).key(name);
            let src = lookup(&algebras, &f.source, "algebra", &at.key("source"))?;
            let tgt = lookup(&algebras, &f.target, "algebra", &at.key("target"))?;
            let m = matrix(field, &f.matrix, (tgt.dim(), src.dim()), &at.key("matrix"))?;
            let map = RingMap::new(src.clone(), tgt.clone(), m.clone()).map_err(|e| {
                CliError::Validation {
                    path: at.to_string(),
                    source: e,
                }
            })?;
            normalized.ring_maps.insert(
                name.clone(),
                RawRingMap {
                    source: f.source.clone(),
                    target: f.target.clone(),
                    matrix: matrix_entries(field, &m),
                },
            );
            ring_maps.insert(name.clone(), map);
        }

        let mut bimodules = BTreeMap::new();
        for (name, b) in &raw.bimodules {
            let at = Path("bimodules".into()).key(name);
            let left = lookup(&algebras, &b.left, "algebra", &at.key("left"))?;
            let right = lookup(&algebras, &b.right, "algebra", &at.key("right"))?;
            let la = actions(field, &b.left_action, left.dim(), b.dim, &at.key("left_action"))?;
            let ra = actions(field, &b.right_action, right.dim(), b.dim, &at.key("right_action"))?;
            let m = Bimodule::new_unchecked(left.clone(), right.clone(), b.dim, la.clone(), ra.clone());
            m.validate().map_err(|e| CliError::Validation {
                path: at.to_string(),
                source: e,
            })?;
            normalized.bimodules.insert(
                name.clone(),
                RawBimodule {
                    left: b.left.clone(),
                    right: b.right.clone(),
                    dim: b.dim,
                    left_action: la.iter().map(|x| matrix_entries(field, x)).collect(),
                    right_action: ra.iter().map(|x| matrix_entries(field, x)).collect(),
                },
            );
            bimodules.insert(name.clone(), m);
        }

        Ok(Document {
            field,
            algebras,
            bimodules,
            ring_maps,
            tasks: raw.tasks,
            normalized,
        })
    }

    pub fn bimodule(&self, name: &str) -> Result<&Bimodule, String> {
        self.bimodules.get(name).ok_or_else(|| format!("unknown bimodule {name:?}"))
    }

    pub fn ring_map(&self, name: &str) -> Result<&RingMap, String> {
        self.ring_maps.get(name).ok_or_else(|| format!("unknown ring map {name:?}"))
    }
}

/// Writes a document back out with canonical entries.
pub fn to_json(doc: &RawDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

impl RawDocument {
    /// A document over `field` with no objects and no tasks.
    pub fn empty(field: Field) -> Self {
        RawDocument {
            field: field_name(field),
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            ring_maps: BTreeMap::new(),
            tasks: Vec::new(),
        }
    }

    pub fn add_algebra(&mut self, name: &str, a: &Algebra) {
        let f = a.field();
        self.algebras.insert(
            name.into(),
            RawAlgebra {
                dim: a.dim(),
                unit: entries(f, a.unit()),
                mult: (0..a.dim())
                    .map(|i| (0..a.dim()).map(|j| entries(f, a.product(i, j))).collect())
                    .collect(),
            },
        );
    }

    pub fn add_bimodule(&mut self, name: &str, left: &str, right: &str, m: &Bimodule) {
        let f = m.field();
        self.bimodules.insert(
            name.into(),
            RawBimodule {
                left: left.into(),
                right: right.into(),
                dim: m.dim(),
                left_action: m.left_actions().iter().map(|x| matrix_entries(f, x)).collect(),
                right_action: m.right_actions().iter().map(|x| matrix_entries(f, x)).collect(),
            },
        );
    }

    pub fn add_ring_map(&mut self, name: &str, source: &str, target: &str, g: &RingMap) {
        self.ring_maps.insert(
            name.into(),
            RawRingMap {
                source: source.into(),
                target: target.into(),
                matrix: matrix_entries(g.source().field(), g.matrix()),
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL_NUMBERS: &str = r#"{
        "field": "Q",
        "algebras": {
            "B": {"dim": 2, "unit": ["1", "0"],
                  "mult": [[["1","0"],["0","1"]], [["0","1"],["0","0"]]]}
        }
    }"#;

    #[test]
    fn parses_and_normalizes() {
        let text = DUAL_NUMBERS.replace("\"1\",\"0\"]", "1, \"0/3\"]");
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.algebras["B"].dim(), 2);
        let again = Document::parse(&to_json(&doc.normalized)).unwrap();
        assert_eq!(again.normalized, doc.normalized);
        assert_eq!(doc.normalized.algebras["B"].mult[0][0], vec![Entry("1".into()), Entry("0".into())]);
    }

    #[test]
    fn field_names() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rationals);
        assert_eq!(parse_field("F_7").unwrap(), Field::Prime(7));
        assert!(matches!(parse_field("F_8"), Err(CliError::Validation { .. })));
        assert!(matches!(parse_field("R"), Err(CliError::Schema { .. })));
    }

    #[test]
    fn wrong_length_names_the_entry() {
        let text = DUAL_NUMBERS.replace("[[\"0\",\"1\"],[\"0\",\"0\"]]", "[[\"0\",\"1\"],[\"0\",\"0\",\"0\"]]");
        let err = Document::parse(&text).unwrap_err();
        assert_eq!(err.to_string(), "parse error at algebras.B.mult[1][1]: expected 2 entries, found 3");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Document::parse("{\n  \"field\": \"Q\",\n  \"algebras\": 3\n}").unwrap_err();
        match err {
            CliError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn axiom_failures_are_named() {
        let text = DUAL_NUMBERS.replace("[[\"0\",\"1\"],[\"0\",\"0\"]]", "[[\"1\",\"0\"],[\"0\",\"0\"]]");
        let err = Document::parse(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("validation failed for algebras.B"), "{msg}");
    }

    #[test]
    fn prime_field_entries_reduce() {
        let text = DUAL_NUMBERS.replace("\"Q\"", "\"F_5\"").replace("[\"1\", \"0\"]", "[\"6\", \"0\"]");
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.normalized.algebras["B"].unit[0], Entry("1".into()));
    }
}
