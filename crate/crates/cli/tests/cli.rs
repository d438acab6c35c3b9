use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run_with_threads(args: &[&str], threads: Option<usize>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ccforge"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t.to_string());
    }
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_threads(args, None)
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Parses stdout as exactly one JSON document and validates it.
fn assert_valid(args: &[&str], schema_name: &str) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let r = run(&full);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", r.stdout));
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} against {schema_name}: {errors:?}");
    doc
}

#[test]
fn dihedral_invariant() {
    let r = run(&["invariant", "--family", "D", "--m", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("phi = (x^6 + 1)/x^3"), "{}", r.stdout);
    assert!(r.stdout.contains("branch inf: e = 3"));
    assert!(r.stdout.contains("branch 2: e = 2"));
    assert!(r.stdout.contains("branch -2: e = 2"));
}

#[test]
fn delta_of_case_ten() {
    let r = run(&["delta", "--case", "10", "--g", "5", "--n", "2"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "1\n"));
}

#[test]
fn case_ten_curve_verifies() {
    let r = run(&["curve", "--case", "10", "--g", "5", "--n", "2", "--lambda", "1", "--verify"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.starts_with("y^2 = x^12 - x^10 - 33*x^8 + 2*x^6 - 33*x^4 - x^2 + 1\n"));
    assert!(!r.stdout.contains("FAIL"));
}

#[test]
fn latex_outputs() {
    let r = run(&["curve", "--case", "10", "--g", "5", "--n", "2", "--lambda", "1", "--latex"]);
    assert!(r.stdout.starts_with("y^{2} = x^{12} - x^{10} - 33 x^{8}"));
    let r = run(&["signature", "--case", "10", "--g", "5", "--n", "2", "--latex"]);
    assert_eq!(r.stdout, "10 & A4 & 5 & 2 & 1 & $(2, 3, 3, 2)$ \\\\\n");
}

#[test]
fn exit_codes() {
    // verification failure still prints the report
    let r = run(&["verify", "--family", "D", "--m", "2", "--n", "2", "--g", "2", "--coeffs", "-1,0,0,0,0,1"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL invariance"));
    let r = run(&["delta", "--case", "10", "--g", "4", "--n", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("NonIntegral"));
    assert_eq!(run(&["delta", "--case", "10", "--g", "5", "--n", "2", "--lambda", "1"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["delta", "--case", "99", "--g", "5", "--n", "2"]).code, 2);
    assert_eq!(run(&["invariant", "--family", "Z"]).code, 2);
    assert_eq!(run(&["curve", "--case", "10", "--g", "5", "--n", "2"]).code, 2);
    let r = run(&["curve", "--case", "10", "--g", "5", "--n", "2", "--field", "Q(zeta12)", "--p", "5", "--lambda", "1"]);
    assert_eq!(r.code, 2);
}

#[test]
fn branch_value_and_wild_errors() {
    let r = run(&["curve", "--case", "4", "--g", "3", "--n", "2", "--m", "2", "--lambda", "1,2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("BranchValueCollision"), "{}", r.stderr);
    let r = run(&["verify", "--family", "C", "--m", "2", "--p", "5", "--n", "5", "--g", "0", "--coeffs", "-1,0,1"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL genus"), "{}", r.stdout);
    assert!(r.stdout.contains("divisible by the characteristic"));
}

#[test]
fn json_documents_match_schemas() {
    assert_valid(&["invariant", "--family", "D", "--m", "3", "--verify"], "invariant");
    assert_valid(&["invariant", "--family", "PGL", "--q", "5", "--p", "5"], "invariant");
    assert_valid(&["cases", "--g", "5"], "cases");
    assert_valid(&["cases", "--g", "4", "--p", "3"], "cases");
    let d = assert_valid(&["delta", "--case", "10", "--g", "5", "--n", "2"], "delta");
    assert_eq!(d["delta"], 1);
    assert_valid(&["signature", "--case", "21", "--g", "7", "--n", "2"], "signature");
    let c = assert_valid(&["curve", "--case", "10", "--g", "5", "--n", "2", "--lambda", "1", "--verify"], "curve");
    assert_eq!(c["case"], 10);
    assert_eq!(c["lambdas"], serde_json::json!(["1"]));
    assert_valid(&["verify", "--case", "6", "--g", "4", "--n", "2", "--m", "2", "--generic"], "curve");
    let r = assert_valid(&["reconcile"], "reconcile");
    let flagged: Vec<&str> = r["rows"].as_array().unwrap().iter().map(|x| x["case"].as_str().unwrap()).collect();
    assert_eq!(flagged, ["1", "2", "3", "21"]);
    assert_valid(&["delta", "--case", "10", "--g", "4", "--n", "2"], "error");
}

#[test]
fn determinism_across_runs_and_threads() {
    let corpus: &[&[&str]] = &[
        &["invariant", "--family", "A5", "--verify", "--json"],
        &["invariant", "--family", "S4"],
        &["cases", "--g", "6"],
        &["cases", "--g", "5", "--p", "5", "--json"],
        &["signature", "--case", "a", "--g", "59", "--n", "2", "--p", "3"],
        &["curve", "--case", "29", "--g", "50", "--n", "2", "--generic", "--field", "GF(31)", "--verify"],
        &["verify", "--case", "10", "--g", "5", "--n", "2", "--lambda", "1", "--json"],
        &["reconcile", "--g-max", "30"],
        &["reconcile", "--g-max", "10", "--p", "5", "--json"],
    ];
    for args in corpus {
        let a = run_with_threads(args, Some(1));
        let b = run_with_threads(args, Some(1));
        let c = run_with_threads(args, Some(4));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
        assert_eq!((a.code, a.stderr.as_str()), (c.code, c.stderr.as_str()), "{args:?}");
        assert!(!a.stdout.is_empty(), "{args:?}: {}", a.stderr);
    }
}

#[test]
fn reconcile_is_fast() {
    let t = Instant::now();
    let r = run(&["reconcile", "--g-max", "30"]);
    assert_eq!(r.code, 0);
    assert!(t.elapsed() < Duration::from_secs(300));
    assert!(r.stdout.contains("FLAG case 21: DimensionMismatch"));
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn case_table_override() {
    let embedded = include_str!("../../core/data/cases.tbl");
    let edited = embedded.replace("delta: (n+g-1)/(6*(n-1))", "delta: (g+n-1)/(6*(n-1)) + 1");
    assert_ne!(edited, embedded);
    let path = tmp("edited.tbl");
    std::fs::write(&path, edited).unwrap();
    let r = run(&["delta", "--case", "10", "--g", "5", "--n", "2", "--case-table", path.to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "2\n"));

    let broken = embedded.replace("delta: (n+g-1)/(6*(n-1))", "delta: g+*n");
    let path = tmp("broken.tbl");
    std::fs::write(&path, broken).unwrap();
    let r = run(&["delta", "--case", "10", "--g", "5", "--n", "2", "--case-table", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    let line = embedded.lines().position(|l| l == "delta: (n+g-1)/(6*(n-1))").unwrap() + 1;
    assert!(r.stderr.contains(&format!("line {line}, column 10")), "{}", r.stderr);
}

#[test]
fn output_file() {
    let path = tmp("delta.txt");
    let r = run(&["delta", "--case", "1", "--g", "2", "--n", "2", "--m", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "2\n");
}
