use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nvs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nvs")).args(args).output().unwrap()
}

fn fixture(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("nvs-cli");
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const GF5_13: &str = r#"{"base":{"kind":"gf","p":5,"n":1},"index":["1","2"],
"sigma":{"1":{"kind":"fpow","alpha":1},"2":{"kind":"fpow","alpha":3}},
"rho":{"1":{"kind":"fpow","alpha":1},"2":{"kind":"fpow","alpha":1}}}"#;

const D9_TWISTED: &str = r#"{"base":{"kind":"dickson9"},"index":["a","b"],
"sigma":{"a":{"kind":"fpow","alpha":1},"b":{"kind":"inner","gamma":3}},
"rho":{"a":{"kind":"fpow","alpha":1},"b":{"kind":"fpow","alpha":1}}}"#;

#[test]
fn classify_counts() {
    let o = nvs(&["classify", "2", "3"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["class_count"], 2);
    assert_eq!(v["classes"], serde_json::json!([[1, 2, 4], [3, 5, 6]]));
    assert_eq!(stdout_json(&nvs(&["classify", "2", "2"]))["class_count"], 1);
    assert_eq!(stdout_json(&nvs(&["classify", "5", "1"]))["class_count"], 2);
    let o = nvs(&["--format", "tsv", "classify", "13", "1"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("class\tsize\trepresentative\texponents\n"));
}

#[test]
fn classify_rejects_bad_input() {
    let o = nvs(&["classify", "6", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));
}

#[test]
fn space_quasi_kernel_and_oracle() {
    let f = fixture("gf5.json", GF5_13);
    let o = nvs(&["space", &f, "qk"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["size"], 9);
    assert_eq!(v["ddot_classes"], serde_json::json!([["1"], ["2"]]));
    let o = nvs(&["space", &f, "oracle-compare"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["summary"], "identical (9 elements)");
    let o = nvs(&["--format", "tsv", "space", &f, "qk"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 10);
}

#[test]
fn space_checks_pass_on_valid_specs() {
    let f = fixture("gf5.json", GF5_13);
    for action in ["axioms", "decompose", "multiplicative"] {
        let o = nvs(&["space", &f, action]);
        assert!(o.status.success(), "{action}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let line = fixture(
        "line.json",
        r#"{"base":{"kind":"gf","p":7,"n":1},"index":["x"],"sigma":{"x":{"kind":"fpow","alpha":5}},"rho":{"x":{"kind":"fpow","alpha":1}}}"#,
    );
    let o = nvs(&["space", &line, "axioms"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["details"]["quasi_kernel_size"], 7);
}

#[test]
fn oracle_compare_reports_the_twisted_dickson_gap() {
    let f = fixture("d9.json", D9_TWISTED);
    let o = nvs(&["space", &f, "oracle-compare"]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["closed_size"], 17);
    assert_eq!(v["bruteforce_size"], 33);
    assert_eq!(v["refined_matches_bruteforce"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("differ"));
    assert!(nvs(&["space", &f, "multiplicative"]).status.success());
}

#[test]
fn complexify_specs() {
    let f = fixture("c2.json", r#"{"T":[2],"S":[1],"conj":false}"#);
    let o = nvs(&["complexify", &f]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(
        v["spec"]["sigma"]["1"],
        serde_json::json!({"kind":"ceps","alpha":[2.0,0.0],"conj":false})
    );
    let res = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == "minimal_poly_residual")
        .unwrap();
    assert!(res["details"]["values"][0]["residual"].as_f64().unwrap() <= 1e-9);

    let id = fixture("c1.json", r#"{"T":[1],"S":[1]}"#);
    let v = stdout_json(&nvs(&["complexify", &id]));
    assert_eq!(v["spec"]["sigma"]["1"], v["spec"]["rho"]["1"]);
    assert_eq!(v["spec"]["sigma"]["1"]["alpha"], serde_json::json!([1.0, 0.0]));

    let three = fixture("c3.json", r#"{"T":[3],"S":[1]}"#);
    let o = nvs(&["complexify", &three, "--conj"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["spec"]["sigma"]["1"]["conj"], true);
}

#[test]
fn malformed_input_leaves_stdout_empty() {
    let bad = fixture(
        "bad.json",
        "{\"base\": {\"kind\": \"gf\", \"p\": 5},\n \"index\": [1,}\n",
    );
    let o = nvs(&["space", &bad, "qk"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let zero = fixture("c0.json", r#"{"T":[0],"S":[1]}"#);
    let o = nvs(&["complexify", &zero]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());

    let f = fixture("gf5.json", GF5_13);
    let o = nvs(&["--bound", "10", "space", &f, "qk"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("25"));
}

#[test]
fn autos_and_bases() {
    let v = stdout_json(&nvs(&["autos", "dickson9"]));
    assert_eq!(v["count"], 24);
    let nf = v["automorphisms"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["nearfield_automorphism"] == true)
        .count();
    assert_eq!(nf, 6);
    let o = nvs(&["check-base", "dickson9"]);
    assert!(o.status.success());
    assert_eq!(
        stdout_json(&o)["distributive_elements"],
        serde_json::json!([[0, 0], [1, 0], [2, 0]])
    );
    for b in ["GF(8)", "gf(3^2)", "R", "C"] {
        assert!(nvs(&["check-base", b]).status.success(), "{b}");
    }
    assert_eq!(nvs(&["autos", "R"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let f = fixture("c15.json", r#"{"T":[1.5,2],"S":[1,3],"conj":true}"#);
    for args in [
        vec!["complexify", f.as_str()],
        vec!["--seed", "7", "check-base", "C"],
        vec!["--format", "tsv", "autos", "GF(16)"],
    ] {
        let a = nvs(&args);
        let b = nvs(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
