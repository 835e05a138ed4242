use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_planar-orient"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("planar-orient-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const TRIANGLE: &str = r#"{"denominator":1,"nodes":["z","a","b"],"root":"z","edges":[
  {"id":0,"u":"z","v":"a","len":1},{"id":1,"u":"a","v":"b","len":1},{"id":2,"u":"b","v":"z","len":1}]}"#;

const K4: &str = r#"{"denominator":1,"nodes":["z","a","b","c"],"root":"z","edges":[
  {"id":0,"u":"z","v":"a","len":1},{"id":1,"u":"z","v":"b","len":1},{"id":2,"u":"z","v":"c","len":1},
  {"id":3,"u":"a","v":"b","len":1},{"id":4,"u":"b","v":"c","len":1},{"id":5,"u":"c","v":"a","len":1}]}"#;

fn ratio_is_one(v: &Value) -> bool {
    v["num"] == v["den"]
}

#[test]
fn orient_triangle_reports_unit_ratios() {
    let input = write("tri.json", TRIANGLE);
    let report = scratch("tri-report.json");
    let out = run(&["orient", "--input", &input, "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    for key in ["max_r9", "max_r27", "max_r405"] {
        assert!(ratio_is_one(&r[key]), "{key} = {}", r[key]);
    }
    // stdout carries the orientation: one record per edge
    let dirs: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(dirs.as_array().unwrap().len(), 3);
}

#[test]
fn oracle_on_k4_has_d_opt() {
    let input = write("k4.json", K4);
    let out = run(&["oracle", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let body: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(body["d_opt"].as_i64().unwrap() >= body["d_g"].as_i64().unwrap());
}

#[test]
fn bench_writes_one_row_per_instance() {
    let csv_path = scratch("bench.csv");
    let out = run(&[
        "bench", "--model", "delaunay", "--nodes", "30", "--count", "50", "--seed", "1", "--output",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(header, ["instance_id", "seed", "n", "m", "D_G", "D_H", "D_opt", "r9", "r27", "r405", "ratio1620", "ms"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 50);
    for row in &rows {
        let r405: f64 = row[9].parse().unwrap();
        assert!(r405 <= 405.0);
    }
}

#[test]
fn malformed_input_exits_one_with_json_error() {
    let input = write("bad.json", "{\"nodes\": 3}");
    let out = run(&["orient", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "input");
}

#[test]
fn bridge_fails_validation() {
    let path = r#"{"denominator":1,"nodes":["z","a"],"root":"z","edges":[{"id":0,"u":"z","v":"a","len":1}]}"#;
    let input = write("bridge.json", path);
    let out = run(&["validate", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_strong_orientation_exits_two() {
    let input = write("tri2.json", TRIANGLE);
    // z->a, a->b, z->b: nothing leaves b
    let o = write("bad-orient.json", r#"[{"id":0,"dir":"uv"},{"id":1,"dir":"uv"},{"id":2,"dir":"vu"}]"#);
    let out = run(&["verify", "--input", &input, "--orientation", &o]);
    assert_eq!(out.status.code(), Some(2));
    let body: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["strongly_connected"], false);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let a = run(&["gen", "--model", "delaunay", "--nodes", "30", "--seed", "7"]);
    let b = run(&["gen", "--model", "delaunay", "--nodes", "30", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let g = planar_orient::io::read_instance(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(planar_orient::io::write_instance(&g).as_bytes(), &a.stdout[..]);
}

#[test]
fn paper_figure_model_emits_the_figure() {
    let out = run(&["gen", "--model", "paper-figure", "--figure", "lcafig"]);
    assert_eq!(out.status.code(), Some(0));
    let g = planar_orient::io::read_instance(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(g.node_count(), 12);
    assert_eq!(g.edge_count(), 16);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let gen = run(&["gen", "--model", "grid", "--nodes", "16", "--seed", "3", "--lengths", "uniform:5"]);
    let input = write("grid.json", std::str::from_utf8(&gen.stdout).unwrap());
    let a = run(&["verify", "--input", &input]);
    let b = run(&["verify", "--input", &input]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_flag_is_an_input_error() {
    let out = bin().args(["orient", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "input");
}
