use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn sliderule(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sliderule")).args(args).output().unwrap()
}

fn piped(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sliderule"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_a_witness() {
    let o = sliderule(&["analyze", "x*ln(x)", "--domain", "0.1:2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("NonMonotone, witness near 0.3679"), "{}", stdout(&o));
}

#[test]
fn analyze_json_is_machine_readable() {
    let o = sliderule(&["analyze", "(x-2)^3/100+1", "--domain=-5:9", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["monotonicity"]["kind"], "increasing");
    assert_eq!(v["origin"]["kind"], "root");
    let x0 = v["origin"]["x0"].as_f64().unwrap();
    assert!((x0 - (2.0 - 100f64.cbrt())).abs() < 1e-9);
}

#[test]
fn compute_multiplies_on_c_and_d() {
    let dir = tempfile::tempdir().unwrap();
    let (d, c, m) = (dir.path().join("d.json"), dir.path().join("c.json"), dir.path().join("m.json"));
    assert!(sliderule(&["catalog", "D", "--unit", "250", "-o", path(&d)]).status.success());
    assert!(sliderule(&["catalog", "C", "--unit", "250", "-o", path(&c)]).status.success());
    let e = sliderule(&["export", "--stator", path(&d), "--slide", path(&c), "-o", path(&m)]);
    assert!(e.status.success(), "{}", String::from_utf8_lossy(&e.stderr));

    let o = sliderule(&["compute", "--model", path(&m), "--f", "D", "--g", "C", "--h", "D", "-x", "2", "-y", "3"]);
    assert_eq!(stdout(&o).trim(), "z = 6");

    let off = sliderule(&["compute", "--model", path(&m), "--f", "D", "--g", "C", "--h", "D", "-x", "5", "-y", "5"]);
    assert_eq!(off.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&off.stderr).contains("off scale"));
}

#[test]
fn catalog_pipes_into_render() {
    let doc = sliderule(&["catalog", "K", "--unit", "250"]);
    let svg = piped(&["render"], &doc.stdout);
    assert!(svg.status.success());
    // 250 lg 8 / 3
    assert!(stdout(&svg).contains(r#"x1="75.26" y1="0.00" x2="75.26""#));
    assert_eq!(stdout(&svg), stdout(&piped(&["render", "-"], &doc.stdout)));
}

#[test]
fn transform_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a.json"), dir.path().join("b.json"), dir.path().join("c.json"));
    assert!(sliderule(&["build", "lg(x)", "--domain", "1:10", "--unit", "250", "--name", "D", "-o", path(&a)])
        .status
        .success());
    assert!(sliderule(&["transform", path(&a), "--op", "negate", "-o", path(&b)]).status.success());
    assert!(sliderule(&["transform", path(&b), "--op", "negate", "-o", path(&c)]).status.success());
    let ticks = |p: &Path| {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v["ticks"].clone()
    };
    assert_eq!(ticks(&a), ticks(&c));
    assert_ne!(ticks(&a), ticks(&b));
    let t = sliderule(&["transform", path(&a), "--op", "translate:-lg(2)"]);
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    assert!((v["origin"]["x0"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(sliderule(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sliderule(&["build", "lg(x)"]).status.code(), Some(2));
    assert_eq!(sliderule(&["catalog", "Q"]).status.code(), Some(1));
    assert_eq!(sliderule(&["build", "x^2", "--domain", "-1:1", "--unit", "10"]).status.code(), Some(1));
    assert_eq!(sliderule(&["render", "/nonexistent/doc.json"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    sliderule(&["catalog", "D", "-o", path(&a)]);
    assert_eq!(sliderule(&["transform", path(&a), "--op", "spin"]).status.code(), Some(1));
}

#[test]
fn export_rejects_mixed_units() {
    let dir = tempfile::tempdir().unwrap();
    let (d, c) = (dir.path().join("d.json"), dir.path().join("c.json"));
    sliderule(&["catalog", "D", "--unit", "250", "-o", path(&d)]);
    sliderule(&["catalog", "C", "--unit", "125", "-o", path(&c)]);
    let o = sliderule(&["export", "--stator", path(&d), "--slide", path(&c)]);
    assert_eq!(o.status.code(), Some(1));
}
