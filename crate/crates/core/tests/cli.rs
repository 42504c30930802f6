use std::path::{Path, PathBuf};

use outctl::cli::{
    run, AnalyzeReport, ComposeReport, CrosscheckSummary, SynthesisStatus, SynthesizeReport, EXIT_CONTROLLABLE,
    EXIT_DISAGREE, EXIT_ERROR, EXIT_NOT_CONTROLLABLE,
};
use outctl::lti_model::{read_system, write_system};
use outctl::numerics::real_matrix;
use outctl::{ControlSignal, LtiSystem, Matrix};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn outctl(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("outctl").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn write(dir: &TempDir, name: &str, sys: &LtiSystem) -> PathBuf {
    let path = dir.path().join(name);
    write_system(&path, sys).unwrap();
    path
}

fn scalar(a: f64, b: f64, c: f64) -> LtiSystem {
    LtiSystem::new(real_matrix(1, 1, &[a]), real_matrix(1, 1, &[b]), real_matrix(1, 1, &[c])).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_integrator_is_controllable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "int.json", &scalar(0.0, 1.0, 1.0));
    let r = outctl(&["analyze", s(&path)]);
    assert_eq!(r.code, EXIT_CONTROLLABLE, "{}", r.stderr);
    assert!(r.stdout.contains("output controllable"), "{}", r.stdout);

    let r = outctl(&["--format", "json", "analyze", s(&path)]);
    let report: AnalyzeReport = serde_json::from_str(&r.stdout).unwrap();
    assert!(report.agree && report.kalman.is_positive());
    assert!((report.gramian_min_eigenvalue - 1.0).abs() < 1e-12);
    assert_eq!(report.exit_code(), r.code);
}

#[test]
fn analyze_zero_input_is_not_controllable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "dead.json", &scalar(-1.0, 0.0, 1.0));
    let r = outctl(&["--format", "json", "analyze", s(&path)]);
    assert_eq!(r.code, EXIT_NOT_CONTROLLABLE);
    let report: AnalyzeReport = serde_json::from_str(&r.stdout).unwrap();
    assert!(report.hautus_output.witness.is_some());
}

#[test]
fn analyze_reports_disagreement() {
    let a = real_matrix(4, 4, &[0., 1., 0., 0., 0., 0., 0., 0., 0., 0., 0., 1., 0., 0., 0., 0.]);
    let b = real_matrix(4, 1, &[0., 1., 0., 1.]);
    let c = real_matrix(2, 4, &[1., 0., 0., 0., 0., 0., 1., 0.]);
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "twin.json", &LtiSystem::new(a, b, c).unwrap());
    assert_eq!(outctl(&["analyze", s(&path)]).code, EXIT_DISAGREE);
}

#[test]
fn analyze_json_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "int.json", &scalar(0.0, 1.0, 1.0));
    let out = dir.path().join("report.json");
    let r = outctl(&["--out", s(&out), "analyze", s(&path)]);
    assert_eq!(r.code, 0);
    let report: AnalyzeReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let again: AnalyzeReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
}

#[test]
fn malformed_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"A": [[0, 1]], "B": [[1]], "C": [[1]]}"#).unwrap();
    let r = outctl(&["analyze", s(&path)]);
    assert_eq!(r.code, EXIT_ERROR);
    assert!(r.stderr.contains("bad.json"), "{}", r.stderr);

    std::fs::write(&path, "not json").unwrap();
    assert_eq!(outctl(&["analyze", s(&path)]).code, EXIT_ERROR);
    assert_eq!(outctl(&["analyze", s(&dir.path().join("missing.json"))]).code, EXIT_ERROR);
    assert_eq!(outctl(&["analyze"]).code, EXIT_ERROR);
    assert_eq!(outctl(&["frobnicate"]).code, EXIT_ERROR);
}

#[test]
fn synthesize_writes_half_unit_control() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "int.json", &scalar(0.0, 1.0, 1.0));
    let ctl = dir.path().join("u.json");
    let r = outctl(&["--format", "json", "--out", s(&ctl), "synthesize", s(&path), "--x0", "[0]", "--y-target", "[1]", "-T", "2"]);
    assert_eq!(r.code, EXIT_CONTROLLABLE, "{}", r.stderr);
    let report: SynthesizeReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.status, SynthesisStatus::Steered);
    assert!(report.verification_error.unwrap() < 1e-9);

    let u = ControlSignal::read(&ctl).unwrap();
    assert!((u.horizon() - 2.0).abs() < 1e-15);
    for sample in u.samples() {
        assert!((sample[0].re - 0.5).abs() < 1e-9 && sample[0].im.abs() < 1e-12);
    }
}

#[test]
fn synthesize_accepts_vector_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "int.json", &scalar(-0.5, 2.0, 1.0));
    let y = dir.path().join("y.json");
    std::fs::write(&y, "[[3, -1]]").unwrap();
    let r = outctl(&["synthesize", s(&path), "--x0", "[1]", "--y", s(&y)]);
    assert_eq!(r.code, EXIT_CONTROLLABLE, "{}", r.stderr);
}

#[test]
fn synthesize_refuses_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "dead.json", &scalar(-1.0, 0.0, 1.0));
    let r = outctl(&["--format", "json", "synthesize", s(&path), "--x0", "[0]", "--y-target", "[1]"]);
    assert_eq!(r.code, EXIT_NOT_CONTROLLABLE);
    let report: SynthesizeReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.status, SynthesisStatus::Refused);
    assert!(report.refusal.unwrap().witness.is_some());
    assert!(report.control.is_none());
}

#[test]
fn synthesize_rejects_bad_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "int.json", &scalar(0.0, 1.0, 1.0));
    assert_eq!(outctl(&["synthesize", s(&path), "--x0", "[0, 0]", "--y-target", "[1]"]).code, EXIT_ERROR);
    assert_eq!(outctl(&["synthesize", s(&path), "--x0", "[0]", "--y-target", "[1, 2]"]).code, EXIT_ERROR);
    assert_eq!(outctl(&["synthesize", s(&path), "--x0", "[0]", "--y-target", "[1]", "-T", "-1"]).code, EXIT_ERROR);
    assert_eq!(outctl(&["synthesize", s(&path), "--x0", "[0]", "--y-target", "[1]", "--grid", "10"]).code, EXIT_ERROR);
}

#[test]
fn compose_disjoint_members() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.json", &scalar(-1.0, 1.0, 1.0));
    let b = write(&dir, "b.json", &scalar(-2.0, 1.0, 1.0));
    let out = dir.path().join("ab.json");
    let r = outctl(&["--format", "json", "--out", s(&out), "compose", s(&a), s(&b)]);
    assert_eq!(r.code, EXIT_CONTROLLABLE, "{}", r.stderr);
    let report: ComposeReport = serde_json::from_str(&r.stdout).unwrap();
    assert!(report.disjoint && report.applicable && report.connected.is_positive());
    assert_eq!((report.n, report.m, report.p), (2, 1, 2));
    let connected = read_system(&out).unwrap();
    assert_eq!(connected.n(), 2);
}

#[test]
fn compose_identical_members_is_not_controllable() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.json", &scalar(0.0, 1.0, 1.0));
    let b = write(&dir, "b.json", &scalar(0.0, 1.0, 1.0));
    let r = outctl(&["--format", "json", "compose", s(&a), s(&b)]);
    assert_eq!(r.code, EXIT_NOT_CONTROLLABLE);
    let report: ComposeReport = serde_json::from_str(&r.stdout).unwrap();
    assert!(!report.disjoint && !report.applicable);
    assert!(report.connected_system.is_some());
}

#[test]
fn compose_single_member_passes_through() {
    let dir = tempfile::tempdir().unwrap();
    let sys = scalar(-1.0, 1.0, 1.0);
    let a = write(&dir, "a.json", &sys);
    let out = dir.path().join("same.json");
    assert_eq!(outctl(&["--out", s(&out), "compose", s(&a)]).code, EXIT_CONTROLLABLE);
    let back = read_system(&out).unwrap();
    assert_eq!((back.a(), back.b(), back.c()), (sys.a(), sys.b(), sys.c()));
}

#[test]
fn compose_rejects_mismatched_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.json", &scalar(-1.0, 1.0, 1.0));
    let wide = LtiSystem::new(Matrix::zeros(1, 1), real_matrix(1, 2, &[1.0, 1.0]), Matrix::identity(1, 1)).unwrap();
    let b = write(&dir, "b.json", &wide);
    let r = outctl(&["compose", s(&a), s(&b)]);
    assert_eq!(r.code, EXIT_ERROR);
}

#[test]
fn crosscheck_is_reproducible() {
    let args = ["--format", "json", "crosscheck", "--seed", "7", "--samples", "60", "--dims", "4,2,2"];
    let first = outctl(&args);
    let second = outctl(&args);
    assert_eq!(first.code, second.code);
    assert_eq!(first.stdout, second.stdout);
    let summary: CrosscheckSummary = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(summary.samples, 60);
    assert_eq!(summary.agree + summary.disagree, 60);
    assert_eq!(summary.exit_code(), first.code);

    let other = outctl(&["--format", "json", "crosscheck", "--seed", "8", "--samples", "60", "--dims", "4,2,2"]);
    assert_ne!(other.stdout, first.stdout);
}

#[test]
fn crosscheck_rank_deficient_outputs_all_fail() {
    let r = outctl(&["--format", "json", "crosscheck", "--seed", "3", "--samples", "40", "--kinds", "rank_deficient_C"]);
    assert_eq!(r.code, EXIT_CONTROLLABLE, "{}", r.stderr);
    let summary: CrosscheckSummary = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(summary.decisions.not_output_controllable, 40);
    assert_eq!(summary.disagree, 0);
}

#[test]
fn crosscheck_argument_errors() {
    assert_eq!(outctl(&["crosscheck", "--samples", "5"]).code, EXIT_ERROR);
    assert_eq!(outctl(&["crosscheck", "--seed", "1", "--dims", "0,1,1"]).code, EXIT_ERROR);
    assert_eq!(outctl(&["crosscheck", "--seed", "1", "--kinds", "banana"]).code, EXIT_ERROR);
}

#[test]
fn help_exits_cleanly() {
    let r = outctl(&["--help"]);
    assert_eq!(r.code, 0);
    for sub in ["analyze", "synthesize", "compose", "crosscheck"] {
        assert!(r.stdout.contains(sub), "{}", r.stdout);
    }
}
