use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use toeplitz_preservers::json::{from_value, MatrixDoc, VerdictDoc};
use toeplitz_preservers::{DenseMatrix, Field, Gf13, Q};

fn tpres(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tpres"))
        .args(args)
        .env_remove("TPRES_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = tpres(args, stdin);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const DIAG_124: &str = r#"{"field": "gf:13", "dense": [["1","0","0"],["0","2","0"],["0","0","4"]]}"#;

#[test]
fn classify_diagonal_over_gf13() {
    let v = ok_json(&["classify", "--field", "gf:13", "--n", "2", "--json", DIAG_124], None);
    assert_eq!(v["kind"], "v");
    assert_eq!(v["preserver"], true);
    assert_eq!(v["params"], json!({"gamma": "1", "r": "2", "alpha": "0"}));
    assert_eq!(v["regime"], "proven");
    let doc: VerdictDoc = from_value(v).unwrap();
    assert!(doc.to_verdict::<Gf13>().unwrap().is_canonical());
}

#[test]
fn not_a_preserver_exits_zero() {
    let l = r#"{"field": "q", "dense": [["1","0","0"],["0","1","0"],["0","0","0"]]}"#;
    let v = ok_json(&["classify", "--json", l], None);
    assert_eq!(v["preserver"], false);
    assert_eq!(v["kind"], "none");
    assert!(v["witness"].is_string());
}

#[test]
fn factor_rank_one() {
    let v = ok_json(&["factor", "--field", "q", "--json", r#"{"field": "q", "dense": [["2","4"],["1","2"]]}"#], None);
    assert_eq!(v["mu"], "1");
    assert_eq!(v["xi"], "2");
    assert_eq!(v["rank_one"], true);
    let v = ok_json(&["factor", "--json", r#"{"field": "q", "dense": [["1","0"],["0","1"]]}"#], None);
    assert_eq!(v["rank_one"], false);
    assert!(v["xi"].is_null());
}

#[test]
fn input_errors_exit_two() {
    let malformed = r#"{"field": "q", "dense": [["1/0","0","0"],["0","1","0"],["0","0","1"]]}"#;
    assert_eq!(tpres(&["classify", "--json", malformed], None).status.code(), Some(2));
    assert_eq!(tpres(&["classify", "--json", "{not json"], None).status.code(), Some(2));
    assert_eq!(tpres(&["classify"], None).status.code(), Some(2));
    assert_eq!(tpres(&["classify", "--field", "gf:5", "--json", DIAG_124], None).status.code(), Some(2));
    assert_eq!(tpres(&["classify", "--n", "3", "--json", DIAG_124], None).status.code(), Some(2));
    assert_eq!(tpres(&["census", "--n", "1"], None).status.code(), Some(2));
    assert_eq!(tpres(&["census", "--field", "q"], None).status.code(), Some(2));
    assert_eq!(tpres(&["classify", "--input", "/nonexistent/l.json"], None).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = tpres(&["census", "--field", "gf:5", "--n", "3", "--budget", "100"], None);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_tpres"))
        .args(["oracle", "--field", "gf:5", "--mode", "exhaustive"])
        .env("TPRES_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_build_classify_round_trip() {
    for (field, l) in [
        ("gf:13", DIAG_124.to_string()),
        ("q", r#"{"field": "q", "dense": [["0","0","1"],["0","1","0"],["1","0","0"]]}"#.to_string()),
    ] {
        let first = ok_json(&["classify", "--field", field, "--json", &l], None);
        let built = ok_json(&["build", "-i", "-"], Some(&first.to_string()));
        let second = ok_json(&["classify", "-i", "-"], Some(&built.to_string()));
        assert_eq!(first, second);
    }
}

#[test]
fn build_outputs_parse_and_match_the_hankel_form() {
    let spec = r#"{"form": "w", "gamma": "2", "r": "-1", "alpha": "0", "beta": "1/2"}"#;
    let plain = ok_json(&["build", "--n", "3", "--json", spec], None);
    let hankel = ok_json(&["build", "--n", "3", "--hankel", "--json", spec], None);
    assert_eq!(plain["coordinate_matrix"], hankel["coordinate_matrix"]);
    let left: MatrixDoc = from_value(plain["left"].clone()).unwrap();
    let hleft: MatrixDoc = from_value(hankel["left"].clone()).unwrap();
    let (m, fmf) = (left.to_dense::<Q>().unwrap(), hleft.to_dense::<Q>().unwrap());
    let k = m.rows();
    assert_eq!(fmf, DenseMatrix::from_fn(k, k, |i, j| m[(k - 1 - i, k - 1 - j)].clone()));
    let right: MatrixDoc = from_value(plain["right"].clone()).unwrap();
    assert_eq!(fmf, right.to_dense::<Q>().unwrap().transpose().scale(&Q::from_i64(2)));
    let verdict = ok_json(&["classify", "-i", "-"], Some(&plain.to_string()));
    assert_eq!(verdict["kind"], "w");
    assert_eq!(verdict["params"]["beta"], "1/2");

    let rect = ok_json(&["build", "--rect", "2,4", "--json", spec], None);
    let l: MatrixDoc = from_value(rect["coordinate_matrix"].clone()).unwrap();
    assert_eq!(l.to_dense::<Q>().unwrap().shape(), (5, 5));
    assert_eq!(tpres(&["build", "--rect", "4,2", "--json", spec], None).status.code(), Some(2));
}

#[test]
fn det_check() {
    let v = ok_json(&["det-check", "--n", "2", "--json", r#"{"form": "v", "gamma": "1", "r": "-1", "alpha": "3"}"#], None);
    assert_eq!(v["det_preserver"], true);
    assert_eq!(v["product"], "1");
    let v = ok_json(&["det-check", "--n", "2", "--json", r#"{"form": "v", "gamma": "2", "r": "1", "alpha": "0"}"#], None);
    assert_eq!(v["det_preserver"], false);
    let v = ok_json(&["det-check", "--json", r#"{"field": "q", "dense": [["1","0","0"],["0","1","0"],["0","0","0"]]}"#], None);
    assert_eq!(v["canonical"], false);
    assert_eq!(v["det_preserver"], false);
}

#[test]
fn oracle_and_census_reports() {
    let v = ok_json(&["census", "--field", "gf:5", "--n", "2"], None);
    assert_eq!(v["count"], 24);
    assert_eq!(v["agree"], true);
    let a = ok_json(&["oracle", "--field", "gf:7", "--mode", "random", "--samples", "500", "--seed", "9"], None);
    let b = ok_json(&["oracle", "--field", "gf:7", "--mode", "random", "--samples", "500", "--seed", "9"], None);
    assert_eq!(a, b);
    assert_eq!(a["tested"], 500);
    assert_eq!(a["seed"], 9);
    assert_eq!(a["disagreements"], json!([]));
    let fam = ok_json(&["oracle", "--field", "gf:5"], None);
    assert_eq!(fam["mode"], "families");
    assert_eq!(fam["regime"], "small-field");
    assert_eq!(fam["tested"], 720);
}

#[test]
fn hankel_conjugation_round_trip() {
    let t = r#"{"field": "q", "toeplitz": {"m": 3, "n": 3, "coords": ["1","2","3","4","5"]}}"#;
    let h = ok_json(&["hankel", "--json", t], None);
    assert_eq!(h["hankel"]["coords"], json!(["1", "2", "3", "4", "5"]));
    let back = ok_json(&["hankel", "-i", "-"], Some(&h.to_string()));
    assert_eq!(back, serde_json::from_str::<Value>(t).unwrap());
}

#[test]
fn output_file_and_pretty_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verdict.json");
    let out = tpres(&["classify", "--pretty", "-o", path.to_str().unwrap(), "--json", DIAG_124], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("kind v"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["kind"], "v");
}
