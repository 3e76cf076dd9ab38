use std::path::Path;
use std::process::{Command, Output};

use prolim::tower::{InverseTower, TowerJson};
use prolim::zlinalg::IntMatrix;
use serde_json::Value;

fn prolim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prolim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn specker_demo_succeeds() {
    let o = prolim(&["demo", "specker", "--window", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["exit_code"], 0);
    assert_eq!(r["report"]["independent_classes"], 5);
}

#[test]
fn snf_reads_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
    let f = write(dir.path(), "m.json", &serde_json::to_string(&m).unwrap());
    let o = prolim(&["snf", "--matrix", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("\"invariant_factors\""), "{text}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        r#"{"rows": 2, "cols": 2, "data": ["1"]}"#,
    );
    let o = prolim(&["snf", "--matrix", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(report(&o)["exit_code"], 2);
    assert_eq!(
        prolim(&["group", "canon", "--group", "Z/0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        prolim(&["tower", "analyze", "--tower", "nonsense"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(prolim(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = prolim(&[
        "hom",
        "--dom",
        "Z/4",
        "--cod",
        "Z/6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["exit_code"], 0);
}

#[test]
fn window_max_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_prolim"))
        .args(["tower", "analyze", "--tower", "hawaii", "--window", "10"])
        .env("PROLIM_WINDOW_MAX", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        prolim(&["tower", "analyze", "--tower", "hawaii", "--window", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        prolim(&["tower", "analyze", "--tower", "hawaii", "--window", "10"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn solenoid_uct_withholds_identification() {
    let o = prolim(&[
        "cech",
        "uct",
        "--tower",
        "solenoid:2",
        "--dim",
        "1",
        "--window",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let r = report(&o);
    assert_eq!(r["report"]["parts"]["stage_suite"]["exit_code"], 0);
    assert_eq!(r["report"]["parts"]["nabla_identification"]["exit_code"], 3);
}

#[test]
fn solenoid_analysis_is_window_insufficient() {
    let o = prolim(&["tower", "analyze", "--tower", "solenoid:3", "--window", "6"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tower_json_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let t = TowerJson::from_tower(&InverseTower::hawaii(5));
    let f = write(dir.path(), "t.json", &serde_json::to_string(&t).unwrap());
    let from_file = prolim(&["tower", "analyze", "--tower", &f]);
    let builtin = prolim(&["tower", "analyze", "--tower", "hawaii", "--window", "5"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, builtin.stdout);
}

#[test]
fn complex_json_file_matches_builder() {
    let dir = tempfile::tempdir().unwrap();
    let k = prolim::simplicial::proj_plane();
    let f = write(dir.path(), "k.json", &serde_json::to_string(&k).unwrap());
    let from_file = report(&prolim(&[
        "complex",
        "cohomology",
        "--complex",
        &f,
        "--dim",
        "2",
    ]));
    let builtin = report(&prolim(&[
        "complex",
        "cohomology",
        "--complex",
        "proj_plane",
        "--dim",
        "2",
    ]));
    assert_eq!(from_file, builtin);
    assert_eq!(builtin["exit_code"], 0);
}

#[test]
fn factor_formula_on_hawaii() {
    let o = prolim(&[
        "tower",
        "factor",
        "--tower",
        "hawaii",
        "--window",
        "7",
        "--formula",
        "coordinate:5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = prolim(&[
        "tower",
        "factor",
        "--tower",
        "hawaii",
        "--window",
        "7",
        "--formula",
        "sum",
    ]);
    assert_eq!(o.status.code(), Some(3));
}
