use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use tord_cli::{corpus_slug, ModuleDocument};
use tord_core::corpus::entry_names;

fn tord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tord")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn export(dir: &Path, name: &str) -> (String, String) {
    let o = tord(&["corpus", name, "--out", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    let slug = corpus_slug(name);
    let m = dir.join(format!("{slug}.json"));
    let e = dir.join(format!("{slug}.expected.json"));
    (m.to_str().unwrap().into(), e.to_str().unwrap().into())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().into()
}

const COMMUTING_FAILURE: &str = r#"{
  "prime": 3, "ramification": 1, "dimension": 2, "labels": ["a", "b"],
  "blocks": [{"type": "eigen", "eigenvalue": "1"}, {"type": "eigen", "eigenvalue": "2"}],
  "monodromy": [["0", "1"], ["0", "0"]],
  "hodge": [{"degree": 0, "basis": [["1", "0"], ["0", "1"]]}]
}"#;

const SHARED_EIGENVALUE: &str = r#"{
  "prime": 3, "ramification": 1, "dimension": 2, "labels": ["a", "b"],
  "blocks": [{"type": "eigen", "eigenvalue": "1"}, {"type": "eigen", "eigenvalue": "1"}],
  "hodge": [{"degree": 0, "basis": [["1", "0"], ["0", "1"]]}]
}"#;

#[test]
fn every_corpus_entry_asserts_cleanly() {
    let dir = TempDir::new().unwrap();
    for name in entry_names() {
        let (m, e) = export(dir.path(), &name);
        let o = tord(&["assert", &m, &e]);
        assert_eq!(code(&o), 0, "{name}: {}", text(&o.stdout));
    }
}

#[test]
fn exported_documents_are_canonical() {
    let dir = TempDir::new().unwrap();
    for name in entry_names() {
        let (m, _) = export(dir.path(), &name);
        let bytes = fs::read_to_string(&m).unwrap();
        assert_eq!(ModuleDocument::parse(&bytes).unwrap().to_json(), bytes, "{name}");
    }
}

#[test]
fn wrong_expectation_is_a_mismatch() {
    let dir = TempDir::new().unwrap();
    let (m, _) = export(dir.path(), "exmp-bad");
    let e = write(
        dir.path(),
        "wrong.json",
        r#"{"crystalline": true, "trianguline": {"refinements": 1}}"#,
    );
    let o = tord(&["assert", &m, &e]);
    assert_eq!(code(&o), 4);
    let out = text(&o.stdout);
    assert!(out.contains("crystalline"), "{out}");
    assert!(!out.contains("refinements"), "{out}");
}

#[test]
fn invalid_modules_exit_two() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "nc.json", COMMUTING_FAILURE);
    let o = tord(&["classify", &p]);
    assert_eq!(code(&o), 2);
    assert!(text(&o.stderr).contains("NOT_COMMUTING"));
    let junk = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(code(&tord(&["classify", &junk])), 2);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&tord(&["classify", "/nonexistent/module.json"])), 1);
    let o = tord(&["corpus", "no-such-entry"]);
    assert_eq!(code(&o), 1);
    assert!(text(&o.stderr).contains("exmp-bad"));
}

#[test]
fn partial_reports_exit_three() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "shared.json", SHARED_EIGENVALUE);
    let o = tord(&["classify", &p]);
    assert_eq!(code(&o), 3);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["trianguline"], "unknown");
    assert!(v["warnings"][0].as_str().unwrap().starts_with("ENUM_INFEASIBLE"));

    let (m, _) = export(dir.path(), "exmp-bad");
    let o = tord(&["--max-dim", "1", "classify", &m]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&tord(&["--max-dim", "1", "enumerate", &m])), 3);
}

#[test]
fn enumerate_lists_subspaces_and_flags() {
    let dir = TempDir::new().unwrap();
    let (m, _) = export(dir.path(), "exmp-bad");
    let o = tord(&["--format", "text", "enumerate", &m]);
    assert_eq!(code(&o), 0);
    assert_eq!(text(&o.stdout), "0\nspan{(0, 1)}\nspan{(1, 0), (0, 1)}\n3 subspaces\n");
    let o = tord(&["enumerate", "--flags", &m]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let (m, _) = export(dir.path(), "abelian:1:generic");
    let one = tord(&["--threads", "1", "classify", &m]);
    let four = tord(&["--threads", "4", "classify", &m]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}
