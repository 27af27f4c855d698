use std::path::{Path, PathBuf};
use std::process::Command;

use serde::de::DeserializeOwned;
use serde::Serialize;
use twkit::formats::SystemDoc;
use twkit::reports::{
    AnalysisDoc, CatalogListDoc, CatalogReportDoc, ExpectationsDoc, HomoclinicCheckDoc, InstanceDoc, SolveDoc,
    VerdictDoc,
};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("data").join(name).to_str().unwrap().to_string()
}

fn expectations() -> String {
    root().join("expectations.json").to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = twkit::run(std::iter::once("twkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Parses `text` as `T` and checks that writing it back reproduces it.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let doc: T = serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(twkit::json::pretty(&doc), text);
    doc
}

fn burgers_system(dir: &Path) -> String {
    let sys = dir.join("burgers_system.json");
    let s = sys.to_str().unwrap().to_string();
    let (code, _, err) = run(&["reduce", "--model", &data("burgers.json"), "--ansatz", "1/1", "--out", &s]);
    assert_eq!(code, 0, "{err}");
    s
}

#[test]
fn hydro_analyze_reference() {
    let (code, out, _) = run(&["hydro-analyze", "--model", &data("hydro_reference.json")]);
    assert_eq!(code, 0);
    let doc: AnalysisDoc = round_trip(&out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["E"], "5/4");
    assert_eq!(v["H1"], "7/8");
    assert!(doc.theorem_holds);
    assert!((doc.r2.0 - (17f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
    assert!((doc.r3.0 - (2.0 * 2f64.sqrt() - 1.0)).abs() < 1e-12);
}

#[test]
fn ive_d_matches_expectations() {
    let x = expectations();
    let (code, out, err) = run(&["catalog", "verify", "--family", "IVd", "--trials", "5", "--seed", "1", "--expectations", &x]);
    assert_eq!(code, 0, "{err}");
    let doc: CatalogReportDoc = round_trip(&out);
    assert!(doc.mismatches.is_empty());
    assert_eq!(doc.families["IVd"].expected, "PASS");
}

#[test]
fn full_catalog_matches_committed_expectations() {
    let x = expectations();
    let (code, out, err) = run(&["catalog", "verify", "--family", "all", "--expectations", &x]);
    assert_eq!(code, 0, "{err}");
    let doc: CatalogReportDoc = serde_json::from_str(&out).unwrap();
    let committed: ExpectationsDoc = serde_json::from_str(&std::fs::read_to_string(&x).unwrap()).unwrap();
    assert_eq!(doc.families.len(), committed.families.len());
    for (id, rec) in &committed.families {
        assert_eq!(doc.families[id].expected, rec.expected, "{id}");
    }
}

#[test]
fn wrong_expectation_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    let text = std::fs::read_to_string(expectations()).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["families"]["IVd"]["expected"] = "FAIL-DOCUMENTED".into();
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, _, err) = run(&["catalog", "verify", "--family", "IVd", "--expectations", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("IVd"), "{err}");
}

#[test]
fn reduce_solve_verify_burgers() {
    let dir = tempfile::tempdir().unwrap();
    let sys = burgers_system(dir.path());
    let text = std::fs::read_to_string(&sys).unwrap();
    let doc: SystemDoc = round_trip(&text);
    assert!(!doc.equations.is_empty());

    let (code, out, _) = run(&["solve", "--system", &sys, "--fix", "a0=0,a1=1,b0=1,b1=1", "--seed", "1"]);
    assert_eq!(code, 0);
    let sol: SolveDoc = round_trip(&out);
    assert!(!sol.solutions.is_empty());
    for s in &sol.solutions {
        assert!((s["alpha"].0 + 1.0).abs() < 1e-9);
        assert!((s["v"].0 + 1.0).abs() < 1e-9);
    }

    let set = "a0=0,a1=1,b0=1,b1=1,alpha=-1,v=-1";
    let (code, out, _) = run(&["verify", "--system", &sys, "--set", set]);
    assert_eq!(code, 0);
    let v: VerdictDoc = round_trip(&out);
    assert_eq!(v.status, "PASS");
    assert_eq!(v.mode, "exact");

    let (code, out, _) = run(&["verify", "--system", &sys, "--set", "a0=0,a1=1,b0=1,b1=1,alpha=-1,v=1"]);
    assert_eq!(code, 1);
    let v: VerdictDoc = round_trip(&out);
    assert_eq!(v.status, "FAIL");
    assert!(!v.failing.is_empty());
}

#[test]
fn solve_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let sys = burgers_system(dir.path());
    let args = ["solve", "--system", &sys, "--seed", "9", "--starts", "16"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn catalog_documents_round_trip() {
    let (code, out, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    let list: CatalogListDoc = round_trip(&out);
    assert_eq!(list.families.len(), 14);

    let (code, out, _) = run(&["catalog", "instantiate", "--family", "IVe-a", "--seed", "2"]);
    assert_eq!(code, 0);
    let inst: InstanceDoc = round_trip(&out);
    assert_eq!(inst.verdict.status, "PASS");

    let set = "l0=-1,l2=1,l3=-2,A=0,kappa=1,tau=0";
    let (code, out, _) = run(&["catalog", "instantiate", "--family", "I-tanh", "--set", set]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["assignment"]["l1"], "2");
    assert_eq!(v["assignment"]["v"], "-1");
}

#[test]
fn eval_writes_csv() {
    let (code, out, _) = run(&["eval", "--family", "IVd", "--seed", "1", "--range", "-5:5:11"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "xi,u");
    assert_eq!(lines.len(), 12);
    for l in &lines[1..] {
        let cols: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[1].is_finite());
    }
}

#[test]
fn hydro_flow_commands() {
    let model = data("hydro_reference.json");
    let (code, out, _) = run(&["hydro-orbit", "--model", &model, "--start", "1.7,0", "--span", "0:20"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<f64>> = out.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    let h0 = rows[0][3];
    assert!(rows.iter().all(|r| (r[3] - h0).abs() < 1e-8 * h0.abs().max(1.0)));
    assert!((rows.last().unwrap()[0] - 20.0).abs() < 1e-9);

    let (code, out, _) = run(&["hydro-separatrix", "--model", &model, "--samples", "11"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("R,Y_plus,Y_minus"));
    assert_eq!(out.lines().count(), 12);

    for method in ["quadrature", "flow"] {
        let (code, out, err) = run(&["hydro-homoclinic", "--model", &model, "--samples", "50", "--method", method]);
        assert_eq!(code, 0, "{err}");
        assert!(out.lines().count() > 50);
    }

    let (code, out, _) = run(&["hydro-homoclinic", "--model", &model, "--check"]);
    assert_eq!(code, 0);
    let doc: HomoclinicCheckDoc = round_trip(&out);
    assert!(doc.max_delta_r.0 < 1e-6);
    let ex = doc.explicit.unwrap();
    assert!(ex.corrected_max_rel_error.0 < 1e-9);
    assert!((0.010..=0.020).contains(&ex.printed_rel_error_at_1_5.0));
}

#[test]
fn exit_codes() {
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["hydro-analyze"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["hydro-analyze", "--model", "/nonexistent/model.json"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["catalog", "verify", "--family", "nope", "--expectations", &expectations()]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"tau":-1,"A":0,"B":1,"kappa":1,"reaction":{}}"#).unwrap();
    let (code, _, _) = run(&["reduce", "--model", bad.to_str().unwrap(), "--ansatz", "1/1"]);
    assert_eq!(code, 2);
    std::fs::write(&bad, r#"{"tau":0,"A":0,"B":1,"kappa":1,"reaction":{"1.5":1}}"#).unwrap();
    let (code, _, _) = run(&["reduce", "--model", bad.to_str().unwrap(), "--ansatz", "1/1", "--power", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_twkit");
    let ok = Command::new(bin).args(["hydro-analyze", "--model", &data("hydro_reference.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
}
