use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";

fn qep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qep")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn compute_trefoil_jones() {
    let v = json(&qep(&["compute", "--pd", TREFOIL, "--bracket", "5", "--invariant", "jones"]));
    assert_eq!(v["jones"], "-1*t^(1/2) + -1*t^(3/2) + -1*t^(5/2) + 1*t^(9/2)");
}

#[test]
fn compute_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.pd");
    std::fs::write(&path, format!("# right-handed trefoil\n{TREFOIL}\n")).unwrap();
    let v = json(&qep(&["compute", "--pd", path.to_str().unwrap(), "--invariant", "lk"]));
    assert_eq!(v["lk"], serde_json::json!([0, 0]));
}

#[test]
fn compute_unlink3_phi() {
    let v = json(&qep(&["compute", "--pd", "unknots=3", "--invariant", "phi", "--bracket", "all"]));
    let want = serde_json::json!([{
        "exponent_polynomial": "-1*x1^-3*x5^3 + -3*x1^-1*x5^1 + -3*x1^1*x5^-1 + -1*x1^3*x5^-3",
        "multiplicity": 16
    }]);
    for i in 1..=5 {
        assert_eq!(v["phi"][i.to_string()], want);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qep(&["compute", "--pd", "X[1,2"]).status.code(), Some(2));
    assert_eq!(qep(&["compute", "--pd", TREFOIL, "--bracket", "6"]).status.code(), Some(2));
    let limited = Command::new(env!("CARGO_BIN_EXE_qep"))
        .args(["compute", "--pd", TREFOIL])
        .env("QEP_MAX_CROSSINGS", "2")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(3));
    assert_eq!(qep(&["enumerate-brackets", "--p", "5", "--mode", "brute"]).status.code(), Some(3));
    assert_eq!(qep(&["enumerate-brackets", "--p", "4"]).status.code(), Some(2));
    assert_eq!(qep(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    for (p, mode, count) in [("2", "homs", 1), ("3", "brute", 32), ("5", "homs", 3072), ("7", "homs", 28512)] {
        let v = json(&qep(&["enumerate-brackets", "--p", p, "--mode", mode]));
        assert_eq!(v["count"], count, "p={p}");
        assert_eq!(v["matches_formula"], true, "p={p}");
    }
    let v = json(&qep(&["enumerate-brackets", "--p", "3", "--mode", "brute"]));
    assert_eq!(v["agrees_with_homs"], true);
}

#[test]
fn enumerate_emits_brackets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    json(&qep(&["enumerate-brackets", "--p", "3", "--emit", path.to_str().unwrap()]));
    let rows: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(rows.len(), 32);
    assert_eq!(rows[0]["A"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_suites_pass() {
    let out = qep(&["verify", "--suite", "formulas"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS formulas"));
}

fn l8a20_dataset(dir: &Path) {
    let out = qep(&["export-fixtures", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if !p.file_name().unwrap().to_str().unwrap().starts_with("L8a20") {
            std::fs::remove_file(p).unwrap();
        }
    }
}

#[test]
fn experiment_on_l8a20_pair() {
    let data = tempfile::tempdir().unwrap();
    l8a20_dataset(data.path());
    let cache = tempfile::tempdir().unwrap();
    let args = ["experiment", "--dataset", data.path().to_str().unwrap(), "--cache-dir", cache.path().to_str().unwrap()];
    let cold = qep(&args);
    let v = json(&cold);
    assert_eq!(v["pairs"], 1);
    for i in 1..=4 {
        assert_eq!(v["x"][i.to_string()], 1);
    }
    assert_eq!(v["x"]["5"], 0);
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 2);
    let warm = qep(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = qep(&args[..3]);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn experiment_is_deterministic_across_thread_counts() {
    let data = tempfile::tempdir().unwrap();
    assert!(qep(&["export-fixtures", "--out", data.path().to_str().unwrap()]).status.success());
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qep"))
            .args(["experiment", "--dataset", data.path().to_str().unwrap()])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
    };
    let (one, four) = (run("1"), run("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["identity_failures"]["phi1=phi3"], serde_json::json!([]));
    assert_eq!(v["identity_failures"]["phi2=phi4"], serde_json::json!([]));
}

#[test]
fn experiment_checks_expected_values() {
    let data = tempfile::tempdir().unwrap();
    std::fs::write(data.path().join("trefoil.pd"), TREFOIL).unwrap();
    std::fs::write(data.path().join("trefoil.expected.json"), r#"{"lk": [0, 0]}"#).unwrap();
    assert!(qep(&["experiment", "--dataset", data.path().to_str().unwrap()]).status.success());
    std::fs::write(data.path().join("trefoil.expected.json"), r#"{"jones": "0"}"#).unwrap();
    assert_eq!(qep(&["experiment", "--dataset", data.path().to_str().unwrap()]).status.code(), Some(1));
}
