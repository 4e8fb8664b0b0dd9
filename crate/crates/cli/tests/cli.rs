use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use subdivlab::corpus::{load_example, ExampleId};
use subdivlab::descriptor::VectorDescriptor;
use subdivlab::engine::phi_integer_samples;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subdivlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn subdivlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?} failed: {}", stderr(&o));
    stdout(&o)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn export_mask(dir: &Path, id: &str, params: Option<&str>) -> PathBuf {
    let mut args = vec!["corpus", "export", id, "--mask-only"];
    if let Some(p) = params {
        args.extend(["--params", p]);
    }
    let text = ok(&args);
    write(dir, &format!("{id}.json"), &text)
}

fn export_vector(dir: &Path, id: &str, params: Option<&str>, name: &str) -> PathBuf {
    let mut args = vec!["corpus", "export", id];
    if let Some(p) = params {
        args.extend(["--params", p]);
    }
    let v: Value = serde_json::from_str(&ok(&args)).unwrap();
    let tv = v["test_vectors"].as_array().unwrap().iter().find(|t| t["name"] == name).expect("test vector");
    write(dir, &format!("{id}_{name}.json"), &serde_json::to_string(&tv["u"]).unwrap())
}

const HAAR: &str = r#"{"r": 1, "support": [0, 1], "coeff": [[["1/2"]], [["1/2"]]]}"#;

fn golden(name: &str, got: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("SUBDIVLAB_REGEN_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "output differs from {}", path.display());
}

#[test]
fn analyze_ex3_reports_five_sum_rules() {
    let dir = TempDir::new().unwrap();
    let m = export_mask(dir.path(), "ex3", None);
    let out = ok(&["analyze", m.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sr"], 5);
    assert_eq!(v["classification"]["tag"], "hermite");
    let sm2 = v["smoothness"]["sm2"]["value"].as_f64().unwrap();
    assert!((sm2 - 4.5335).abs() < 0.05, "sm2 {sm2}");
}

#[test]
fn analyze_haar() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "haar.json", HAAR);
    let v: Value = serde_json::from_str(&ok(&["analyze", m.to_str().unwrap()])).unwrap();
    assert_eq!(v["sr"], 1);
    assert_eq!(v["r"], 1);
    assert_eq!(v["classification"]["tag"], "lagrange");
}

#[test]
fn analyze_rejects_bad_a0() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "diag.json", r#"{"r": 2, "support": [0, 0], "coeff": [[["1", "0"], ["0", "2"]]]}"#);
    let o = run(&["analyze", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cond_a0"), "{}", stderr(&o));
}

#[test]
fn parse_failures_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"r": 1, "support": [0, 1], "coeff": [[["1/2"]], [["half"]]]}"#);
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(1));
    let short = write(dir.path(), "short.json", r#"{"r": 1, "support": [0, 2], "coeff": [[["1/2"]], [["1/2"]]]}"#);
    assert_eq!(run(&["analyze", short.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["analyze", missing.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["corpus", "run", "ex9"]).status.code(), Some(1));
}

#[test]
fn analyze_and_rates_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for id in ["ex1", "ex4"] {
        let m = export_mask(dir.path(), id, None);
        let a = ok(&["analyze", m.to_str().unwrap()]);
        let b = ok(&["analyze", m.to_str().unwrap()]);
        assert_eq!(a, b, "{id}");
    }
    let m = export_mask(dir.path(), "ex4", None);
    let u = export_vector(dir.path(), "ex4", None, "u2");
    let args = ["rates", m.to_str().unwrap(), "--u", u.to_str().unwrap()];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn subdivide_ex1_hat_sums() {
    let dir = TempDir::new().unwrap();
    let m = export_mask(dir.path(), "ex1", None);
    let out = ok(&["subdivide", m.to_str().unwrap(), "--deriv", "0", "--level", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,value1,value2");
    assert_eq!(lines.len(), 18);
    for line in &lines[1..] {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let hat = (1.0 - f[0].abs()).max(0.0);
        assert!((f[1] + f[2] - hat).abs() < 1e-13, "{line}");
    }
    golden("subdivide_ex1_j0_n3.csv", &out);
}

#[test]
fn subdivide_refuses_unsafe_derivative() {
    let dir = TempDir::new().unwrap();
    let m = export_mask(dir.path(), "ex2a2", Some("t1=1,t2=-1"));
    let o = run(&["subdivide", m.to_str().unwrap(), "--deriv", "6", "--level", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--force"));
    let forced = ok(&["subdivide", m.to_str().unwrap(), "--deriv", "6", "--level", "2", "--force"]);
    assert!(forced.lines().count() > 1);
}

#[test]
fn subdivide_from_delta_row_matches_default() {
    let dir = TempDir::new().unwrap();
    let m = export_mask(dir.path(), "ex2a2", Some("t1=1,t2=-1"));
    let w0 = write(dir.path(), "w0.json", r#"{"support": [0, 0], "values": [["1", "0", "0", "1"]]}"#);
    let base = ["subdivide", m.to_str().unwrap(), "--deriv", "1", "--level", "3"];
    let a = ok(&base);
    let mut with = base.to_vec();
    with.extend(["--initial", w0.to_str().unwrap()]);
    assert_eq!(a, ok(&with));
}

#[test]
fn rates_ex2a2_u3_matches_figure() {
    let dir = TempDir::new().unwrap();
    let p = "t1=1,t2=-1";
    let m = export_mask(dir.path(), "ex2a2", Some(p));
    let u = export_vector(dir.path(), "ex2a2", Some(p), "u3");
    let out = ok(&["rates", m.to_str().unwrap(), "--u", u.to_str().unwrap(), "--levels", "10"]);
    let row10: Vec<&str> = out.lines().find(|l| l.starts_with("10,")).unwrap().split(',').collect();
    let y: f64 = row10[2].parse().unwrap();
    assert!((y - 46.1290).abs() < 0.05, "{y}");
    let summary = out.lines().last().unwrap();
    assert!(summary.starts_with("# j=0 "), "{summary}");
    let slope: f64 = summary.split("slope=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((slope - 5.0).abs() < 0.15, "{slope}");
}

#[test]
fn rates_of_the_eigenvector_are_exact() {
    let dir = TempDir::new().unwrap();
    let case = load_example(ExampleId::Ex4, &[]).unwrap();
    let v = case.printed_filter.clone().unwrap();
    let u = phi_integer_samples(&case.mask, &v, 0).unwrap();
    let up = write(dir.path(), "uphi.json", &serde_json::to_string(&VectorDescriptor::from_sequence(&u)).unwrap());
    let m = export_mask(dir.path(), "ex4", None);
    let out = ok(&["rates", m.to_str().unwrap(), "--u", up.to_str().unwrap(), "--levels", "6"]);
    for line in out.lines().skip(1).filter(|l| !l.starts_with('#')) {
        assert_eq!(line.split(',').nth(1), Some("0"), "{line}");
    }
    assert!(out.contains("slope=exact"), "{out}");
}

#[test]
fn rates_ex3_u3_slope() {
    let dir = TempDir::new().unwrap();
    let m = export_mask(dir.path(), "ex3", None);
    let u = export_vector(dir.path(), "ex3", None, "u3");
    let out = ok(&["rates", m.to_str().unwrap(), "--u", u.to_str().unwrap()]);
    let summary = out.lines().last().unwrap();
    let slope: f64 = summary.split("slope=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((slope - 3.1).abs() < 0.15, "{slope}");
}

#[test]
fn design_haar_is_unique() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.json", r#"{"order": 0, "coeffs": [["1"]]}"#);
    let out = ok(&["design", "--support", "0,1", "--r", "1", "--order", "1", "--filter", f.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["particular"], serde_json::json!([[["1/2"]], [["1/2"]]]));
    golden("design_haar.json", &out);
}

#[test]
fn design_ex3_family_has_two_parameters() {
    let dir = TempDir::new().unwrap();
    let m: Value = serde_json::from_str(&ok(&["corpus", "export", "ex3", "--mask-only"])).unwrap();
    let mut filter = m["filter"].clone();
    filter["order"] = 3.into();
    filter["coeffs"] = Value::Array(filter["coeffs"].as_array().unwrap()[..4].to_vec());
    let f = write(dir.path(), "f.json", &filter.to_string());
    let out = ok(&[
        "design", "--support", "-2,2", "--r", "2", "--order", "4", "--filter", f.to_str().unwrap(), "--symmetry", "0:1,-1",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 2);
}

#[test]
fn design_infeasible_exits_two() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.json", r#"{"order": 2, "coeffs": [["1"], ["0"], ["0"]]}"#);
    let o = run(&["design", "--support", "0,1", "--r", "1", "--order", "3", "--filter", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

fn corpus_summary(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&ok(args)).unwrap();
    assert_eq!(v["summary"]["failed"], 0, "{:#}", v["checks"]);
    v
}

fn has_passing(v: &Value, name: &str) -> bool {
    v["checks"].as_array().unwrap().iter().any(|c| c["name"] == name && c["pass"] == true)
}

#[test]
fn corpus_run_ex1() {
    let v = corpus_summary(&["corpus", "run", "ex1"]);
    assert!(has_passing(&v, "transition_eigenvalues"));
}

#[test]
fn corpus_run_ex2a2_figures() {
    let dir = TempDir::new().unwrap();
    let v = corpus_summary(&["corpus", "run", "ex2a2", "--params", "t1=1,t2=-1", "--out", dir.path().to_str().unwrap()]);
    let figures = v["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with("figure_")).count();
    assert_eq!(figures, 5);
    let csv = std::fs::read_to_string(dir.path().join("ex2a2_u3.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn corpus_run_ex4_balanced() {
    let v = corpus_summary(&["corpus", "run", "ex4"]);
    assert!(has_passing(&v, "classification"));
}

#[test]
fn exported_mask_round_trips() {
    let dir = TempDir::new().unwrap();
    for id in ["ex1", "ex2a1", "ex2a2", "ex3", "ex4"] {
        let text = ok(&["corpus", "export", id, "--mask-only"]);
        let d = subdivlab::descriptor::MaskDescriptor::from_json(&text).unwrap();
        assert_eq!(d.to_json(), text, "{id}");
        let p = write(dir.path(), "m.json", &text);
        let reparsed = subdivlab::descriptor::MaskDescriptor::from_mask(&d.to_mask().unwrap(), d.filter().unwrap().as_ref());
        assert_eq!(reparsed.to_json(), text, "{id}");
        assert!(run(&["analyze", p.to_str().unwrap(), "--levels", "6"]).status.success());
    }
}
