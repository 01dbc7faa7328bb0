use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const PROBLEM_1D: &str = r#"{
    "interval": [0, 1], "Pe": 3, "Da": 90,
    "bc": {"left": {"kind": "dirichlet", "value": 1}, "right": {"kind": "dirichlet", "value": 0}},
    "source": {"type": "polynomial", "coeffs": [1000, 2000, 5000, 10000]},
    "M": 20, "N1s": 3
}"#;

const DELTA_1D: &str = r#"{
    "interval": [0, 1], "Pe": 3, "Da": 90,
    "bc": {"left": {"kind": "dirichlet", "value": 0}, "right": {"kind": "dirichlet", "value": 0}},
    "source": {"type": "dirac_delta", "position": 0.5, "strength": 1},
    "M": 20, "N1s": 2
}"#;

const PROBLEM_2D: &str = r#"{
    "a": 1, "b": 1, "Pe": 3, "Da": 90, "theta": 1.0471975511965976,
    "bc": {
        "left": {"kind": "dirichlet", "data": {"type": "reference"}},
        "right": {"kind": "dirichlet", "data": {"type": "reference"}},
        "bottom": {"kind": "dirichlet", "data": {"type": "reference"}},
        "top": {"kind": "dirichlet", "data": {"type": "reference"}}
    },
    "M": 6, "N": 6
}"#;

fn fsm(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsm")).args(args).env("FSM_OUT_DIR", out).output().unwrap()
}

fn config(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve1d_writes_profile_and_solution() {
    let dir = TempDir::new().unwrap();
    let cfg = config(&dir, "p.json", PROBLEM_1D);
    let out = dir.path().join("out");
    let o = fsm(&out, &["solve1d", "--config", &cfg, "--samples", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let profile = std::fs::read_to_string(out.join("profile.csv")).unwrap();
    assert_eq!(profile.lines().next(), Some("x,phi,dphi,d2phi"));
    assert_eq!(profile.lines().count(), 12);
    assert!(out.join("solution.json").exists());
}

#[test]
fn solver_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let cfg = config(&dir, "delta.json", DELTA_1D);
    let o = fsm(&dir.path().join("out"), &["solve1d", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn configuration_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let bad = config(&dir, "bad.json", "{\"interval\": [0, 1]");
    assert_eq!(fsm(&out, &["solve1d", "--config", &bad]).status.code(), Some(2));
    assert_eq!(fsm(&out, &["solve1d", "--config", "missing.json"]).status.code(), Some(2));
    assert_eq!(fsm(&out, &[]).status.code(), Some(2));
    assert_eq!(fsm(&out, &["green1d", "--Pe", "3"]).status.code(), Some(2));
    assert_eq!(fsm(&out, &["convergence1d", "--experiment", "9z"]).status.code(), Some(2));
    assert_eq!(fsm(&out, &["oracle-check", "--dim", "3"]).status.code(), Some(2));
}

#[test]
fn solve2d_writes_field() {
    let dir = TempDir::new().unwrap();
    let cfg = config(&dir, "p2.json", PROBLEM_2D);
    let out = dir.path().join("out");
    let o = fsm(&out, &["solve2d", "--config", &cfg, "--grid", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let field = std::fs::read_to_string(out.join("field.csv")).unwrap();
    assert_eq!(field.lines().next(), Some("x1,x2,phi,dphi_dx1,dphi_dx2"));
    assert_eq!(field.lines().count(), 26);
}

#[test]
fn convergence_runs_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = fsm(out, &["convergence1d", "--experiment", "3c,4a", "--M", "2,5,10", "--jobs", "2"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for id in ["3c", "4a"] {
        for f in ["curve.csv", "meta.json"] {
            let x = std::fs::read(a.join(id).join(f)).unwrap();
            assert_eq!(x, std::fs::read(b.join(id).join(f)).unwrap(), "{id}/{f}");
        }
        let curve = std::fs::read_to_string(a.join(id).join("curve.csv")).unwrap();
        assert_eq!(curve.lines().count(), 4);
    }
}

#[test]
fn convergence2d_writes_curve_and_fields() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = fsm(&out, &["convergence2d", "--experiment", "4c", "--M", "4,8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let curve = std::fs::read_to_string(out.join("4c/curve.csv")).unwrap();
    let rows: Vec<&str> = curve.lines().skip(1).collect();
    assert!(rows[0].starts_with("4,4,") && rows[1].starts_with("8,8,"), "{curve}");
    for f in ["fields/fsm.csv", "fields/reference.csv", "meta.json"] {
        assert!(out.join("4c").join(f).exists(), "{f}");
    }
}

#[test]
fn oracle_check_reports_agreement() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = fsm(&out, &["oracle-check", "--dim", "1", "--experiment", "1a", "--nodes", "4001"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("oracle/1d-1a.json")).unwrap()).unwrap();
    assert_eq!(report["dim"], 1);
}
