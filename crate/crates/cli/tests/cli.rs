use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vskein")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn tmp_file(name: &str, body: &str) -> String {
    let p = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn invariant_figure8() {
    let v = json(&["invariant", "--catalog", "figure8", "--json"]);
    assert_eq!(v["x_text"], "1*A^-8+-1*A^-4+1*A^0+-1*A^4+1*A^8");
    assert_eq!(v["writhe"], 0);
    assert_eq!(v["components"], 1);
    assert_eq!(v["almost_classical"], true);
    let text = stdout(&run(&["invariant", "--catalog", "figure8"]));
    assert!(text.contains("X = A^8 - A^4 + 1 - A^-4 + A^-8"), "{text}");
}

#[test]
fn invariant_unknot_and_braid() {
    assert_eq!(json(&["invariant", "--catalog", "unknot", "--json"])["x_text"], "1*A^0");
    let v = json(&["invariant", "--braid", "s=2: s1 s1 s1", "--json"]);
    assert_eq!(v["f_text"], "-1*A^-16+1*A^-12+1*A^-4");
}

#[test]
fn file_inputs() {
    let pd = tmp_file("trefoil.pd", "X[6,1,3,4] +; X[4,5,1,2] +; X[2,3,5,6] +\n");
    let gauss = tmp_file("trefoil.gauss", "O1+ U2+ O3+ U1+ O2+ U3+\n");
    let a = json(&["invariant", "--pd", &pd, "--json"]);
    let b = json(&["invariant", "--gauss", &gauss, "--json"]);
    assert_eq!(a["f"], b["f"]);
    assert_eq!(a["f_text"], "-1*A^-16+1*A^-12+1*A^-4");
}

#[test]
fn skein_figure8_all_zero() {
    let v = json(&["skein", "--catalog", "figure8", "--crossing", "1", "--json"]);
    assert_eq!(v["ok"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["status"] == "ok"));
    assert_eq!(v["diagrams"]["virtualized"]["x_text"], "1*A^-2*d1^1+1*A^0+-1*A^2*d1^1+-1*A^4+1*A^8");
    assert_eq!(v["diagrams"]["minus"]["x_text"], "1*A^0");
}

#[test]
fn skein_gates_preconditions() {
    let o = run(&["skein", "--catalog", "vtrefoil", "--crossing", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("classical: residual 0"), "{text}");
    assert!(text.contains("checkerboard: precondition unmet"), "{text}");
    assert!(text.contains("virtualized: precondition unmet"), "{text}");
    let v = json(&["skein", "--braid", "s=2: s1 s1 s1", "--crossing", "2", "--json"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "ok"));
}

#[test]
fn skein_rejects_virtual_crossing() {
    assert_eq!(run(&["skein", "--catalog", "vtrefoil", "--crossing", "3"]).status.code(), Some(2));
}

#[test]
fn numbering_outputs() {
    let v = json(&["numbering", "--catalog", "vtrefoil", "--json"]);
    assert!(!v["cuts"].as_array().unwrap().is_empty());
    assert!(v["numbering"].is_object());
    let o = run(&["numbering", "--catalog", "trefoil"]);
    assert!(stdout(&o).starts_with("cut points: 0"));
    let v = json(&["numbering", "--catalog", "figure8_triple_virtual", "--around-virtual", "1", "--json"]);
    assert_eq!(v["cuts"].as_array().unwrap().len(), 2);
    // no valid two-point system around a crossing of the classical part: exit 1
    let o = run(&["numbering", "--catalog", "vtrefoil", "--around-virtual", "3", "--json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn state_table_curl() {
    let text = stdout(&run(&["state-table", "--catalog", "curl+"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("natural=+1 loops=2"), "{}", lines[0]);
    assert!(lines[1].contains("natural=-1 loops=1"), "{}", lines[1]);
}

#[test]
fn random_is_deterministic() {
    let a = run(&["random", "--seed", "7", "--count", "5", "--json"]);
    let b = run(&["random", "--seed", "7", "--count", "5", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
    let c = run(&["random", "--seed", "8", "--count", "5", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn json_is_byte_identical() {
    let a = run(&["skein", "--catalog", "figure8", "--crossing", "2", "--json"]);
    let b = run(&["skein", "--catalog", "figure8", "--crossing", "2", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariant", "--braid", "s=2: x1"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--catalog", "no_such"]).status.code(), Some(2));
    assert_eq!(run(&["invariant"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--catalog", "unknot", "--braid", "s=1:"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--catalog", "figure8", "--cap", "3"]).status.code(), Some(3));
    assert_eq!(run(&["invariant", "--catalog", "figure8", "--cap", "4"]).status.code(), Some(0));
}
