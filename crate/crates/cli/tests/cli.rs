use std::path::Path;
use std::process::{Command, Output};

use qgroupoid::examples::{builtin, BUILTIN_NAMES};
use qgroupoid::qt::trivial_r;
use qgroupoid_cli::format::SpecDocument;
use serde_json::Value;
use tempfile::TempDir;

fn qg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgroupoid"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_doc(dir: &Path, name: &str, doc: &SpecDocument) {
    std::fs::write(dir.join(name), doc.write()).unwrap();
}

#[test]
fn generate_then_validate() {
    let dir = TempDir::new().unwrap();
    let o = qg(dir.path(), &["example", "elementary", "--partition", "1,1", "-o", "h.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = qg(dir.path(), &["validate", "h.json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("axioms: pass"));
    assert!(out.contains("verdict: valid"));
}

#[test]
fn self_double_is_modular_with_one_object() {
    let dir = TempDir::new().unwrap();
    qg(dir.path(), &["example", "elementary", "--partition", "1,1", "-o", "h.json"]);
    let o = qg(dir.path(), &["double", "h.json", "-o", "d.json", "--sidecar", "side.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("side.json")).unwrap()).unwrap();
    assert_eq!(side["dim"], 4);
    assert_eq!(side["pre_dim"], 16);
    let o = qg(dir.path(), &["--json", "smatrix", "d.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["s"].as_array().unwrap().len(), 1);
    assert_ne!(v["s"][0][0]["exact"], "0");
}

#[test]
fn broken_antipode_names_the_axiom() {
    let dir = TempDir::new().unwrap();
    let h = builtin("elementary-1-1").unwrap();
    let mut doc = SpecDocument::from_groupoid(&h, None);
    // zero the first row of S
    doc.antipode.retain(|(i, _, _)| *i != 0);
    doc.r_matrix = None;
    doc.ribbon = None;
    doc.star = None;
    write_doc(dir.path(), "broken.json", &doc);
    let o = qg(dir.path(), &["validate", "broken.json"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("antipode_target") && out.contains("FAIL witness"), "{out}");
    let o = qg(dir.path(), &["--json", "validate", "broken.json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&Value> = v["axioms"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_array()));
}

#[test]
fn builtin_files_round_trip_bit_exactly() {
    let dir = TempDir::new().unwrap();
    for name in BUILTIN_NAMES {
        let file = format!("{name}.json");
        let o = qg(dir.path(), &["example", name, "-o", &file]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let text = std::fs::read_to_string(dir.path().join(&file)).unwrap();
        let doc = SpecDocument::parse(&text).unwrap();
        assert_eq!(doc.write(), text, "{name}");
        let h = doc.to_groupoid().unwrap();
        let again = SpecDocument::from_groupoid(&h, doc.provenance.clone());
        assert_eq!(again.write(), text, "{name}");
        assert_eq!(h, builtin(name).unwrap(), "{name}");
    }
}

#[test]
fn identical_commands_give_identical_reports() {
    let dir = TempDir::new().unwrap();
    qg(dir.path(), &["example", "z2", "-o", "z.json"]);
    for args in [vec!["validate", "z.json"], vec!["--json", "characters", "z.json"], vec!["haar", "z.json"]] {
        let a = qg(dir.path(), &args);
        let b = qg(dir.path(), &args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), Some(0));
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\n  \"format\": \"qgroupoid/1\",\n  \"conductor\": 1 ,,\n}").unwrap();
    let o = qg(dir.path(), &["validate", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let mut doc = SpecDocument::from_groupoid(&builtin("z2").unwrap(), None);
    doc.counit[0].1 = "1 + z (mod Phi_3)".into();
    write_doc(dir.path(), "field.json", &doc);
    let o = qg(dir.path(), &["validate", "field.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("counit[0]"), "{}", stderr(&o));

    let o = qg(dir.path(), &["validate", "missing.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qg(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qg(dir.path(), &["example", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dimension_cap() {
    let dir = TempDir::new().unwrap();
    qg(dir.path(), &["example", "s3", "-o", "s3.json"]);
    let o = Command::new(env!("CARGO_BIN_EXE_qgroupoid"))
        .current_dir(dir.path())
        .env("QGROUPOID_MAX_DIM", "4")
        .args(["validate", "s3.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("QGROUPOID_MAX_DIM"));
    // the pre-double of s3 has dimension 36
    let o = Command::new(env!("CARGO_BIN_EXE_qgroupoid"))
        .current_dir(dir.path())
        .env("QGROUPOID_MAX_DIM", "30")
        .args(["double", "s3.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn triangular_structure_is_not_modular() {
    let dir = TempDir::new().unwrap();
    let mut h = builtin("z2").unwrap();
    h.r_matrix = Some(trivial_r(&h));
    write_doc(dir.path(), "tri.json", &SpecDocument::from_groupoid(&h, None));
    let o = qg(dir.path(), &["smatrix", "tri.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("S is singular"));
    // without an R-matrix there is nothing to compute
    qg(dir.path(), &["example", "z2", "-o", "z.json"]);
    let o = qg(dir.path(), &["smatrix", "z.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qg(dir.path(), &["ribbon", "tri.json"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn links_and_surgery_on_the_double_of_z2() {
    let dir = TempDir::new().unwrap();
    qg(dir.path(), &["example", "z2", "-o", "z.json"]);
    let o = qg(dir.path(), &["double", "z.json", "-o", "d.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = qg(dir.path(), &["--json", "smatrix", "d.json"]);
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let colors = format!("{i},{j}");
            let o = qg(dir.path(), &["--json", "link", "d.json", "--braid", "s1 s1", "--colors", &colors]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert_eq!(v["invariant"]["exact"], s["s"][j][i]["exact"]);
        }
    }
    let o = qg(dir.path(), &["--json", "rt", "d.json", "--braid", "m=0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invariant"]["exact"], "1");
    let o = qg(dir.path(), &["--json", "rt", "d.json", "--braid", "m=1", "--framing", "-1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invariant"]["exact"], "1");
    let o = qg(dir.path(), &["link", "d.json", "--braid", "s1", "--colors", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qg(dir.path(), &["link", "d.json", "--braid", "s1 x2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dual_and_haar() {
    let dir = TempDir::new().unwrap();
    qg(dir.path(), &["example", "pair", "--objects", "2", "-o", "p.json"]);
    let o = qg(dir.path(), &["dual", "p.json", "-o", "pd.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qg(dir.path(), &["dual", "pd.json", "-o", "pdd.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qg(dir.path(), &["validate", "pdd.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qg(dir.path(), &["haar", "p.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Haar integral"));
    let o = qg(dir.path(), &["--json", "characters", "pd.json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["irreducibles"].as_array().unwrap().is_empty());
}
