//! Plain-text rendering: one row per task.

use serde_json::Value;

use crate::Report;

fn verdict_text(v: &Value) -> String {
    match v {
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", verdict_text(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn note(task: &Value) -> String {
    if let Some(e) = task.get("error").and_then(Value::as_str) {
        return format!("error: {e}");
    }
    let mut parts = Vec::new();
    if let Some(route) = task.get("route").and_then(Value::as_str) {
        parts.push(format!("via {route}"));
    }
    if let (Some(a), Some(b)) = (task.get("m_side"), task.get("relative_side")) {
        parts.push(format!("H_M {a} vs H(S|A) {b}"));
    }
    if let Some(Value::Array(hs)) = task.get("hypotheses") {
        let failed: Vec<&str> = hs
            .iter()
            .filter(|h| h["holds"] == Value::Bool(false))
            .filter_map(|h| h["name"].as_str())
            .collect();
        if !failed.is_empty() {
            parts.push(format!("failed: {}", failed.join(", ")));
        }
    }
    if task.get("inferred") == Some(&Value::Bool(true)) {
        parts.push("syzygy criterion beyond degree 1".into());
    }
    if let Some(met) = task.get("expect_met").and_then(Value::as_bool) {
        parts.push(if met { "expectation met".into() } else { format!("expected {}", verdict_text(&task["expect"])) });
    }
    parts.join("; ")
}

pub fn text(report: &Report) -> String {
    let rows: Vec<[String; 4]> = report
        .tasks
        .iter()
        .map(|t| {
            let args = t["args"]
                .as_array()
                .map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" "))
                .unwrap_or_default();
            [
                t["op"].as_str().unwrap_or("?").to_string(),
                args,
                verdict_text(&t["verdict"]),
                note(t),
            ]
        })
        .collect();
    let header = ["task", "args", "verdict", "notes"];
    let mut width = header.map(str::len);
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: [&str; 4]| {
        format!(
            "{:<w0$}  {:<w1$}  {:<w2$}  {}",
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2]
        )
        .trim_end()
        .to_string()
    };
    let mut out = format!("field {}\n", report.field);
    out.push_str(&line(header));
    out.push('\n');
    for r in &rows {
        out.push_str(&line([&r[0], &r[1], &r[2], &r[3]]));
        out.push('\n');
    }
    out
}
