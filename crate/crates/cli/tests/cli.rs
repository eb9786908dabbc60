use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_magbill"))
}

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str], env_out: Option<&Path>) -> Output {
    let mut cmd = bin();
    cmd.args(args).env_remove("MAGBILL_OUT_DIR");
    if let Some(dir) = env_out {
        cmd.env("MAGBILL_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("config.json");
    fs::write(&path, text).unwrap();
    path
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_slice(&fs::read(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn verify_all_on_constant_density_passes() {
    let out = tempfile::tempdir().unwrap();
    let cfg = examples().join("verify_all_constant.json");
    let o = run(&["verify-all", "--config", cfg.to_str().unwrap(), "--out", out.path().to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(out.path());
    assert_eq!(r["passed"], true);
    for entry in r["checks"].as_array().unwrap() {
        for key in ["check", "anchor", "residual", "tolerance", "verdict"] {
            assert!(entry.get(key).is_some(), "{key} missing in {entry}");
        }
    }
}

#[test]
fn exotic_geodesics_fit_unit_circles() {
    let dir = tempfile::tempdir().unwrap();
    let base: serde_json::Value =
        serde_json::from_slice(&fs::read(examples().join("geodesic_exotic.json")).unwrap()).unwrap();
    let mut cfg = base.clone();
    cfg["experiment"]["starts"] = 2.into();
    let path = write_config(dir.path(), &cfg.to_string());
    let out = dir.path().join("out");
    let o = run(&["geodesic", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let fits: serde_json::Value = serde_json::from_slice(&fs::read(out.join("geodesic_fits.json")).unwrap()).unwrap();
    for f in fits.as_array().unwrap() {
        assert!((f["radius"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    }
    let csv = fs::read_to_string(out.join("geodesic.csv")).unwrap();
    assert!(csv.starts_with("trajectory,s,x1,x2,alpha\n"));
    assert!(out.join("geodesic.svg").exists());
}

#[test]
fn negative_tolerance_is_a_usage_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{"metric": {"kind": "euclidean"}, "tolerances": {"quad_rel": -1e-9}, "experiment": {"kind": "reflect"}}"#,
    );
    let out = dir.path().join("out");
    let o = run(&["reflect", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), r#"{"metric": {"kind": "euclidean"}, "experiment": {"kind": "reflect"}}"#);
    let p = path.to_str().unwrap();
    assert_eq!(run(&["billiard", "--config", p], None).status.code(), Some(2));
    assert_eq!(run(&["teleport", "--config", p], None).status.code(), Some(2));
    assert_eq!(run(&["reflect"], None).status.code(), Some(2));
    assert_eq!(run(&["reflect", "--config", "/nonexistent.json"], None).status.code(), Some(2));
}

#[test]
fn failing_checks_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // A table too large for the string construction leaves the reachable region.
    let path = write_config(
        dir.path(),
        r#"{"metric": {"kind": "magnetic_constant", "R": 1.0},
            "experiment": {"kind": "string", "obstacle_radius": 0.3, "level_distance": 1.9}}"#,
    );
    let out = dir.path().join("out");
    let o = run(&["string", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&out)["passed"], false);
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{"metric": {"kind": "magnetic_constant", "R": 1.0}, "experiment": {"kind": "reflect", "samples": 30}, "seed": 11}"#,
    );
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = run(&["reflect", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0));
    }
    for name in ["report.json", "reflect.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let c = dir.path().join("c");
    run(&["reflect", "--config", path.to_str().unwrap(), "--out", c.to_str().unwrap(), "--seed", "12"], None);
    assert_eq!(report(&c)["seed"], 12);
    assert_ne!(fs::read(a.join("reflect.csv")).unwrap(), fs::read(c.join("reflect.csv")).unwrap());
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{"metric": {"kind": "magnetic_constant", "R": 1.0}, "experiment": {"kind": "ellipse", "grid": 120}}"#,
    );
    let env_dir = dir.path().join("from-env");
    let o = run(&["ellipse", "--config", path.to_str().unwrap()], Some(&env_dir));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(env_dir.join("report.json").exists());
    assert!(env_dir.join("ellipse.csv").exists());
}

#[test]
fn billiard_overlay_has_two_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = examples().join("billiard_magnetic.json");
    let o = run(&["billiard", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let svg = fs::read_to_string(out.join("billiard.svg")).unwrap();
    assert_eq!(svg.matches("<path").count(), 2);
    let csv = fs::read_to_string(out.join("billiard.csv")).unwrap();
    assert_eq!(csv.lines().count(), 31);
}
