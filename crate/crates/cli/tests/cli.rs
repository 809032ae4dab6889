use std::path::Path;
use std::process::{Command, Output};

use crsym::builtins;
use crsym::io::{self, choice_to_json, extension_to_file, extension_to_json, EntryRepr};
use serde_json::Value;

fn crsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crsym")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let o = crsym(&all);
    (code(&o), serde_json::from_str(&stdout(&o)).expect("machine output is JSON"))
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_str().unwrap().to_string()
}

fn check_status(report: &Value, name: &str) -> String {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .map(|c| c["status"].as_str().unwrap().to_string())
        .unwrap_or_else(|| panic!("no check {name}"))
}

fn e2_files(dir: &Path) -> (String, String) {
    let cr = write(dir, "e2.cr.json", &io::cr_to_json(&builtins::e2_cr()));
    let choice = write(dir, "e2.choice.json", &choice_to_json(&builtins::e2_choice()));
    (cr, choice)
}

#[test]
fn builtin_verify_suites_pass() {
    for name in builtins::NAMES {
        let o = crsym(&["builtin", name, "--verify"]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn emitted_builtin_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(code(&crsym(&["builtin", "sp4r", "--out", out])), 0);
    let text = std::fs::read_to_string(dir.path().join("sp4r.json")).unwrap();
    let ext = io::extension_from_json(&text).unwrap();
    assert_eq!(ext, builtins::sp4r());
    assert_eq!(extension_to_json(&ext), text);
}

#[test]
fn check_extension_reports_flatness() {
    let dir = tempfile::tempdir().unwrap();
    let e2 = write(dir.path(), "e2.json", &extension_to_json(&builtins::e2()));
    let sp11 = write(dir.path(), "sp11.json", &extension_to_json(&builtins::sp11()));
    let (c, r) = machine(&["check-extension", &e2]);
    assert_eq!(c, 0);
    let flat = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "flat").unwrap();
    assert_eq!(flat["detail"], "false");
    let (c, r) = machine(&["check-extension", &sp11]);
    assert_eq!(c, 0);
    let flat = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "flat").unwrap();
    assert_eq!(flat["detail"], "true");
}

#[test]
fn corrupted_e2_fails_normality_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = extension_to_file(&builtins::e2());
    // g₁ entry of α(T_x): stays in su(2,1), breaks ∂*κ = 0
    f.alpha[0][0][1] = EntryRepr::Scalar(["1".into(), "0".into(), "0".into(), "0".into()]);
    f.alpha[0][1][2] = EntryRepr::Scalar(["-1".into(), "0".into(), "0".into(), "0".into()]);
    let path = write(dir.path(), "bad.json", &io::to_canonical(&f));
    let (c, r) = machine(&["check-extension", &path]);
    assert_eq!(c, 1);
    assert_eq!(check_status(&r, "membership"), "pass");
    assert_eq!(check_status(&r, "normality"), "fail");
    let detail = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "normality").unwrap()["detail"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(detail.starts_with("∂*κ(ξ"), "{detail}");
}

#[test]
fn cralgebra_pipeline_emits_e2_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let (cr, choice) = e2_files(dir.path());
    let (c, r) = machine(&["check-cralgebra", &cr, "--choice", &choice]);
    assert_eq!(c, 0);
    assert_eq!(r["verdict"], "Symmetric");
    let emitted: io::ExtensionFile = serde_json::from_value(r["extension"].clone()).unwrap();
    assert_eq!(io::to_canonical(&emitted), extension_to_json(&builtins::e2()));
}

#[test]
fn parity_mixing_choice_is_not_symmetric() {
    let dir = tempfile::tempdir().unwrap();
    let (cr, _) = e2_files(dir.path());
    let choice = write(dir.path(), "mix.json", &choice_to_json(&builtins::e2_mixing_choice()));
    let (c, r) = machine(&["check-cralgebra", &cr, "--choice", &choice]);
    assert_eq!(c, 1);
    assert!(r["verdict"].as_str().unwrap().starts_with("NotSymmetricForChoice"));
    assert_eq!(r["nu"]["direct"], false);
}

#[test]
fn search_reports_constraints_and_distinguished_choice() {
    let dir = tempfile::tempdir().unwrap();
    let (cr, _) = e2_files(dir.path());
    let (c, r) = machine(&["check-cralgebra", &cr, "--search"]);
    assert_eq!(c, 0);
    let degrees: Vec<u64> = r["equations"].as_array().unwrap().iter().map(|e| e["degree"].as_u64().unwrap()).collect();
    assert!(degrees.contains(&1) && degrees.contains(&2));
    assert!(degrees.iter().all(|&d| d <= 2));
    let want = serde_json::to_value(io::choice_to_file(&builtins::e2_choice())).unwrap();
    assert!(r["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["choice"] == want && c["verdict"] == "Symmetric"));
}

#[test]
fn find_symmetries_line_pair_examples() {
    let (c, r) = machine(&["find-symmetries", "--p", "2", "--q", "2", "--u", "0,1,0,0,1,0", "--v", "1,1,0,0,1,0"]);
    assert_eq!(c, 0);
    assert_eq!(r["case"], "case 3");
    let sets = r["solutions"].as_array().unwrap();
    assert_eq!(sets[0]["empty"], true);
    assert_eq!(sets[1]["dimension"], 7);
    assert_eq!(sets[1]["z_free"], true);
    let (c, r) = machine(&[
        "find-symmetries", "--p", "2", "--q", "2", "--u", "0,0,0,0,0,1", "--v", "1,sqrt(2),0,0,1+i,0",
    ]);
    assert_eq!(c, 0);
    assert!(r["solutions"].as_array().unwrap().iter().all(|s| s["empty"] == true));
}

#[test]
fn usage_errors_exit_two() {
    let o = crsym(&["find-symmetries", "--p", "2", "--q", "2", "--u", "0,1,0,0,0,0", "--v", "0,0,0,0,0,1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not null"));
    let dir = tempfile::tempdir().unwrap();
    let (cr, _) = e2_files(dir.path());
    assert_eq!(code(&crsym(&["check-cralgebra", &cr])), 2);
    let bad = write(dir.path(), "bad.json", "{\n  \"signature\": \n}");
    let o = crsym(&["check-extension", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&crsym(&["builtin", "nope"])), 2);
    assert_eq!(code(&crsym(&["check-extension", "/nonexistent/file.json"])), 2);
}

#[test]
fn search_scope_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let e = builtins::sp11();
    let cr = crsym::cralgebra::CrAlgebra::from_embedding(e.algebra, e.sig, e.alpha).unwrap();
    let path = write(dir.path(), "sp11.cr.json", &io::cr_to_json(&cr));
    let o = crsym(&["check-cralgebra", &path, "--search"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("dim 𝔨 ≤ 4"));
}

#[test]
fn machine_output_is_deterministic() {
    let a = crsym(&["--format", "machine", "builtin", "standard", "--verify", "--seed", "11"]);
    let b = crsym(&["--format", "machine", "builtin", "standard", "--verify", "--seed", "11"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
