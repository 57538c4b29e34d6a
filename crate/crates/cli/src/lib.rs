//! Loads algebras, bimodules and ring maps from JSON documents and runs
//! diagnostics on them.

pub mod corpus;
pub mod document;
pub mod error;
pub mod render;
pub mod tasks;

use serde_json::{json, Value};

pub use document::{Document, RawDocument, RawTask};
pub use error::CliError;
pub use tasks::{RunOptions, DEFAULT_NMAX};

/// The result of running every task of a document, in order.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub field: String,
    pub tasks: Vec<Value>,
    /// One entry per task with an expectation.
    pub expectations: Vec<bool>,
    pub errors: usize,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "tasks": self.tasks,
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn all_expectations_met(&self) -> bool {
        self.errors == 0 && self.expectations.iter().all(|&p| p)
    }
}

pub fn run(doc: &Document, opts: &RunOptions) -> Report {
    let mut tasks = Vec::with_capacity(doc.tasks.len());
    let mut expectations = Vec::new();
    let mut errors = 0;
    for t in &doc.tasks {
        let (v, pass) = tasks::run_task(doc, t, opts);
        if v.get("error").is_some() {
            errors += 1;
        }
        expectations.extend(pass);
        tasks.push(v);
    }
    Report {
        field: document::field_name(doc.field),
        tasks,
        expectations,
        errors,
    }
}

/// Reads, validates and runs a document file.
pub fn run_file(path: &std::path::Path, opts: &RunOptions) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc = Document::parse(&text)?;
    Ok(run(&doc, opts))
}
