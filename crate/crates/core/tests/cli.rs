use std::path::Path;
use std::process::Command as Process;

use lucascert::cli::corpus::{corpus, entry, run_corpus};
use lucascert::cli::document::from_json_text;
use lucascert::cli::{emit_problem, main_with, parse_problem, DocumentError, Problem};
use lucascert::hyperdata::{validate_factorial_system, HyperDataError};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["lucascert"];
    full.extend_from_slice(args);
    let code = main_with(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_doc(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn corpus_apery_entry_is_the_bivariate_system() {
    let e = entry("apery-bivariate").unwrap();
    let want = validate_factorial_system(
        vec![vec![2, 1], vec![1, 1]],
        vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        2,
    )
    .unwrap();
    assert_eq!(e.document.problem, Problem::Factorial { system: want });
}

#[test]
fn parse_errors_carry_locations() {
    match parse_problem("") {
        Err(DocumentError::Schema { pointer, .. }) => assert_eq!(pointer, ""),
        other => panic!("{other:?}"),
    }
    let err = parse_problem(r#"{"kind": "hypergeometric", "alpha": ["3/2", "1/2"], "beta": ["1/1", "1/1"]}"#).unwrap_err();
    assert_eq!(err.pointer(), Some("/alpha/0"));
    assert!(matches!(err, DocumentError::Data { source: HyperDataError::ParamOutOfRange { .. }, .. }));
    let err = parse_problem(r#"{"kind": "hypergeometric", "alpha": ["1/2", "x"], "beta": ["1/1", "1/1"]}"#).unwrap_err();
    assert_eq!(err.pointer(), Some("/alpha/1"));
    let err = parse_problem(r#"{"kind": "factorial", "e": [2], "f": [1, 1], "colour": 3}"#).unwrap_err();
    assert!(matches!(err, DocumentError::Schema { .. }));
    let err = parse_problem(r#"{"kind": "hypergeometric", "alpha": ["1/2"], "beta": [3]}"#).unwrap_err();
    assert_eq!(err.pointer(), Some("/beta/0"));
}

#[test]
fn corpus_documents_round_trip() {
    for e in corpus() {
        let once = parse_problem(&emit_problem(&e.document)).unwrap();
        assert_eq!(once, e.document, "{}", e.id);
        assert_eq!(emit_problem(&once), emit_problem(&e.document));
        // the vendored form and the emitted form describe the same document
        let raw: Value = serde_json::to_value(&e.raw).unwrap();
        let reparsed = parse_problem(&raw.to_string()).unwrap();
        assert_eq!(reparsed, e.document);
    }
}

#[test]
fn corpus_is_complete_and_passes() {
    let ids: Vec<&str> = corpus().iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids.iter().filter(|id| id.starts_with("oeis-")).count(), 10);
    for id in ["apery-bivariate", "factorial-3n1-2n2-w11", "factorial-3n1-2n2-w32", "aesz-4star", "aesz-31"] {
        assert!(ids.contains(&id), "{id}");
    }
    let results = run_corpus(&[]).unwrap();
    let failed: Vec<_> = results.iter().filter(|r| !r.ok).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(run_corpus(&["nope".into()]).is_err());
}

#[test]
fn corpus_entries_are_schema_documents() {
    let text = include_str!("../corpus/factorial.json");
    let raw: Vec<Value> = from_json_text(text).unwrap();
    assert!(raw.iter().all(|e| e["document"]["kind"].is_string()));
}

#[test]
fn certify_and_verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_doc(dir.path(), "f.json", r#"{"kind": "factorial", "e": [10], "f": [5, 3, 1, 1]}"#);
    let (code, out, _) = run(&["certify", &f]);
    assert_eq!(code, 0);
    assert!(out.contains("all primes"), "{out}");

    let h = write_doc(dir.path(), "h.json", r#"{"kind": "hypergeometric", "alpha": ["1/2", "1/2"], "beta": ["2/3", "1/1"]}"#);
    let (code, out, _) = run(&["verify", "--p", "5", "--k", "1", "--json", &h]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    let r = &report["reports"][0];
    assert_eq!(r["verdict"], "not-p-integral");
    assert_eq!(r["integrality_failures"][0], serde_json::json!([2]));

    // (4; 2, 2) fails the univariate criterion: a disproof, exit 1
    let g = write_doc(dir.path(), "g.json", r#"{"kind": "factorial", "e": [4], "f": [2, 2]}"#);
    assert_eq!(run(&["certify", &g]).0, 1);
    // several variables: certified, or inconclusive, never a disproof
    let b = write_doc(
        dir.path(),
        "b.json",
        r#"{"kind": "factorial", "dim": 2, "e": [[2, 2]], "f": [[1, 1], [0, 1], [1, 0]]}"#,
    );
    let (code, _, _) = run(&["certify", &b]);
    assert!(code == 0 || code == 2, "{code}");
}

#[test]
fn usage_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_doc(dir.path(), "bad.json", r#"{"kind": "hypergeometric", "alpha": ["3/2"], "beta": ["1/1"]}"#);
    let (code, _, err) = run(&["certify", &bad]);
    assert_eq!(code, 3);
    assert!(err.contains("/alpha/0"), "{err}");
    let empty = write_doc(dir.path(), "empty.json", "");
    assert_eq!(run(&["certify", &empty]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
    assert_eq!(run(&["certify", "/does/not/exist.json"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["certify", "--corpus", "no-such-entry"]).0, 3);
    let f = write_doc(dir.path(), "f.json", r#"{"kind": "factorial", "e": [2], "f": [1, 1]}"#);
    assert_eq!(run(&["verify", &f]).0, 3, "verify without primes");
}

#[test]
fn translate_coeffs_valuation_and_search() {
    let (code, out, _) = run(&["translate", "--corpus", "factorial-10_5-3-1-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("3200000/27"), "{out}");

    let (code, out, _) = run(&["coeffs", "--order", "5", "--json", "--corpus", "oeis-A005258"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1/1", "3/1", "19/1", "147/1", "1251/1"]));

    let dir = tempfile::tempdir().unwrap();
    let q = write_doc(
        dir.path(),
        "q.json",
        r#"{"kind": "hypergeometric", "alpha": ["1/2", "1/2"], "beta": ["2/3", "1/1"], "queries": [{"p": 5, "n": [2]}]}"#,
    );
    let (code, out, _) = run(&["valuation", "--json", &q]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valuations"][0]["valuation"], -1);

    let (code, out, _) = run(&["relation-search", "--order", "60", "--height", "5", "--corpus", "factorial-2_1-1"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn reports_are_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let first = run(&["certify", "--json", "--cache-dir", c, "--corpus", "hyper-1_3-1_2--3_4-1_1"]);
    let second = run(&["certify", "--json", "--cache-dir", c, "--corpus", "hyper-1_3-1_2--3_4-1_1"]);
    let uncached = run(&["certify", "--json", "--no-cache", "--corpus", "hyper-1_3-1_2--3_4-1_1"]);
    assert_eq!(first, second);
    assert_eq!(first, uncached);
    let files: Vec<_> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].to_str().unwrap();
    assert!(name.ends_with(".json") && name.len() == 64 + 5);

    let a = run(&["corpus", "run", "--json"]);
    let b = run(&["corpus", "run", "--json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn binary_reads_cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_lucascert");
    let out = Process::new(exe)
        .args(["certify", "--corpus", "factorial-4_2-1-1"])
        .env("LUCASCERT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    let out = Process::new(exe)
        .args(["certify", "--no-cache", "--corpus", "factorial-3_1-1-1"])
        .env("LUCASCERT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    let out = Process::new(exe).args(["corpus", "list"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("aesz-31"));
}

fn schema(name: &str) -> serde_json::Value {
    let path = format!("{}/schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn corpus_and_documents_match_schemas() {
    let problem = schema("problem.schema.json");
    let mut entry = schema("corpus-entry.schema.json");
    entry["items"]["properties"]["document"] = problem.clone();
    let corpus_v = jsonschema::validator_for(&entry).unwrap();
    for name in ["factorial", "hypergeometric", "bivariate", "aesz"] {
        let path = format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        let errs: Vec<String> = corpus_v.iter_errors(&v).map(|e| format!("{}: {e}", e.instance_path())).collect();
        assert!(errs.is_empty(), "{name}: {errs:?}");
    }
    let doc_v = jsonschema::validator_for(&problem).unwrap();
    for e in lucascert::cli::corpus::corpus() {
        let round = serde_json::to_value(e.document.to_raw()).unwrap();
        assert!(doc_v.is_valid(&round), "{}", e.id);
    }
    assert!(!doc_v.is_valid(&serde_json::json!({"kind": "factorial", "e": [2]})));
    assert!(!doc_v.is_valid(&serde_json::json!({"kind": "hypergeometric", "alpha": ["1/2"], "beta": ["x"]})));
}
