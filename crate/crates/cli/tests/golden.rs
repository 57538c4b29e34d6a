//! Fixture corpus and golden reports. Set `RELHOCH_BLESS=1` to rewrite the
//! files from the current code.

use std::fs;
use std::path::PathBuf;

use relhoch_cli::document::to_json;
use relhoch_cli::{corpus, run, Document, RunOptions};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn bless() -> bool {
    std::env::var_os("RELHOCH_BLESS").is_some()
}

fn check_or_write(path: &PathBuf, contents: &str) {
    if bless() {
        fs::write(path, contents).unwrap();
        return;
    }
    let on_disk = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(on_disk == contents, "{} is stale; rerun with RELHOCH_BLESS=1", path.display());
}

#[test]
fn fixture_files_match_generators() {
    for (stem, doc) in corpus::documents() {
        let mut text = to_json(&doc);
        text.push('\n');
        check_or_write(&fixture_dir().join(format!("{stem}.json")), &text);
    }
}

#[test]
fn golden_reports() {
    for (stem, _) in corpus::documents() {
        let text = fs::read_to_string(fixture_dir().join(format!("{stem}.json"))).unwrap();
        let doc = Document::parse(&text).unwrap();
        let report = run(&doc, &RunOptions::default());
        assert!(report.all_expectations_met(), "{stem}: {}", report.to_json_string());
        check_or_write(&fixture_dir().join(format!("{stem}.golden.json")), &report.to_json_string());
    }
}

#[test]
fn fixtures_round_trip() {
    for (stem, _) in corpus::documents() {
        let text = fs::read_to_string(fixture_dir().join(format!("{stem}.json"))).unwrap();
        let doc = Document::parse(&text).unwrap();
        let mut again = to_json(&doc.normalized);
        again.push('\n');
        assert_eq!(again, text, "{stem}");
    }
}

#[test]
fn example_tasks_in_reports() {
    let load = |stem: &str| {
        let text = fs::read_to_string(fixture_dir().join(format!("{stem}.json"))).unwrap();
        run(&Document::parse(&text).unwrap(), &RunOptions::default()).to_json()
    };
    let fx3 = load("fx3");
    let verdicts: Vec<_> = fx3["tasks"].as_array().unwrap()[..3].iter().map(|t| t["verdict"].clone()).collect();
    assert_eq!(verdicts, vec![serde_json::json!(false), serde_json::json!(false), serde_json::json!("> 3")]);

    let fx4 = load("fx4");
    let report = fx4["tasks"].as_array().unwrap().iter().find(|t| t["op"] == "report").unwrap();
    assert_eq!(report["verdict"]["hdim"], "1");

    let fx5 = load("fx5");
    let sep = &fx5["tasks"][0];
    assert_eq!(sep["verdict"], true);
    assert!(sep["witness"]["casimir"].is_array());

    let fx6 = load("fx6");
    let morita = &fx6["tasks"][0];
    assert_eq!(morita["m_side"], morita["relative_side"]);
}
