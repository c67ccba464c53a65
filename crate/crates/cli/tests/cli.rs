//! End-to-end runs of the `gmult` binary.

use std::path::Path;
use std::process::{Command, Output};

use gmult::Report;

const MINIMAL: &str = r#"{"seed":1,"dims":{"d":4,"d0":1,"n":4},"trials":3,"suites":["existence_bound","sigma"]}"#;

fn gmult(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gmult"));
    c.args(args).env_remove("GMULT_TOLERANCE");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn report(out: &Output) -> Report {
    Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).expect("json report")
}

#[test]
fn run_writes_json_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.json", MINIMAL);
    let out_path = dir.path().join("r.json");
    let out = gmult(&["run", &sc, "--out", out_path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r = Report::from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r.summary.failed, 0);
    assert!(r.summary.total > 0);
    assert_eq!(r.scenario.seed, 1);
}

#[test]
fn seed_flag_overrides_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.json", MINIMAL);
    let a = report(&gmult(&["run", &sc, "--seed", "9"], &[]));
    assert_eq!(a.scenario.seed, 9);
    let b = report(&gmult(&["run", &sc], &[]));
    assert_ne!(a.records[0].instance_digest, b.records[0].instance_digest);
}

#[test]
fn errors_exit_two_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad_dims = r#"{"seed":1,"dims":{"d":5,"d0":2,"n":2},"trials":1,"suites":["random_onb"]}"#;
    let sc = write(dir.path(), "bad.json", bad_dims);
    let out = gmult(&["run", &sc], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d = n*d0"));

    // residuals at condition number 100 exceed the 1e-12 floor
    let sc = write(dir.path(), "s.json", r#"{"seed":3,"dims":{"d":6,"d0":2,"n":3},"trials":2,"suites":["riesz_transition"]}"#);
    let out = gmult(&["run", &sc, "--tolerance", "1e-300", "--format", "markdown"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.contains("| Result | Suites | Passed | Failed | Skipped | Worst slack |"));
    assert!(md.contains("## Failures"));
    assert!(md.contains("transition operator onto a Riesz basis"));
}

#[test]
fn tolerance_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.json", r#"{"seed":1,"dims":{"d":4,"d0":1,"n":4},"trials":1,"tolerance":1e-7,"suites":["sigma"]}"#);
    let tol = |r: &Report| r.scenario.tolerance.unwrap();
    assert_eq!(tol(&report(&gmult(&["run", &sc], &[]))), 1e-7);
    assert_eq!(tol(&report(&gmult(&["run", &sc], &[("GMULT_TOLERANCE", "1e-6")]))), 1e-6);
    assert_eq!(tol(&report(&gmult(&["run", &sc, "--tolerance", "1e-5"], &[("GMULT_TOLERANCE", "1e-6")]))), 1e-5);
    let out = gmult(&["run", &sc], &[("GMULT_TOLERANCE", "oops")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("GMULT_TOLERANCE"));
}

#[test]
fn validate_reports_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(dir.path(), "ok.json", MINIMAL);
    assert_eq!(gmult(&["validate", &ok], &[]).status.code(), Some(0));
    let bad = write(dir.path(), "bad.json", r#"{"seed":1,"dims":{"d":0,"d0":1,"n":4},"trials":3,"suites":[]}"#);
    let out = gmult(&["validate", &bad], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dims are positive"));
    let unknown = write(dir.path(), "u.json", r#"{"seed":1,"dims":{"d":4,"d0":1,"n":4},"trials":3,"suites":[],"bogus":1}"#);
    let out = gmult(&["validate", &unknown], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn demos_pass_and_are_deterministic() {
    for name in ["canonical", "sweep", "ghs"] {
        let a = gmult(&["demo", name], &[]);
        assert_eq!(a.status.code(), Some(0), "demo {name}");
        let (ra, rb) = (report(&a), report(&gmult(&["demo", name], &[])));
        assert_eq!(ra.scenario.seed, 0xC0FFEE);
        assert_eq!(ra.json_without_wall_time(), rb.json_without_wall_time());
        assert_eq!(Report::from_json(&ra.to_json()).unwrap(), ra);
    }
}

#[test]
fn sweep_command() {
    let out = gmult(&["sweep", "--law", "power:1", "--sizes", "2,4,8,16"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.records.iter().all(|x| x.suite == "unbounded_sweep" && x.pass));
    let out = gmult(&["sweep", "--law", "cubic:3"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_scenarios_validate() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    for entry in std::fs::read_dir(root).unwrap() {
        let p = entry.unwrap().path();
        let out = gmult(&["validate", p.to_str().unwrap()], &[]);
        assert_eq!(out.status.code(), Some(0), "{}", p.display());
    }
}
