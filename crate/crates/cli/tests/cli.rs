use std::path::Path;
use std::process::{Command, Output};

fn nltv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nltv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn out_arg(dir: &Path) -> String {
    dir.display().to_string()
}

#[test]
fn simulate_writes_snapshots_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = nltv(&["simulate", "--dyadic-j", "3", "--t-final", "0.05", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("u_t0.05_eps0.125.csv").exists());
    let manifest = std::fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    assert!(manifest.contains("u_t0_eps0.125.csv sha256="));
    assert!(manifest.contains("dyadic_j = 3"));
}

#[test]
fn local_riemann_shock_stays_put() {
    let dir = tempfile::tempdir().unwrap();
    let o = nltv(&[
        "simulate", "--local", "--datum", "riemann:0,1", "--dx", "0.01", "--t-final", "0.3",
        "--out", &out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let a = std::fs::read(dir.path().join("u_t0_eps0.csv")).unwrap();
    let b = std::fs::read(dir.path().join("u_t0.3_eps0.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn invalid_grid_exits_2_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = nltv(&["simulate", "--epsilon", "0.1", "--dx", "0.03", "--out", &out_arg(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sample\ndyadic_j = 2\ndx = 0.03\nt_final = 0.05\n").unwrap();
    let bad = nltv(&["simulate", "--config", cfg.to_str().unwrap(), "--out", &out_arg(dir.path())]);
    assert_eq!(bad.status.code(), Some(2));
    let good = nltv(&[
        "simulate", "--config", cfg.to_str().unwrap(), "--dx", "0.015625", "--out", &out_arg(dir.path()),
    ]);
    assert_eq!(good.status.code(), Some(0), "{}", String::from_utf8_lossy(&good.stderr));
    assert!(dir.path().join("u_t0.05_eps0.25.csv").exists());
}

#[test]
fn bad_config_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "speed = fast\n").unwrap();
    let o = nltv(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = nltv(&["simulate", "--config", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn characteristics_paths() {
    let dir = tempfile::tempdir().unwrap();
    let o = nltv(&[
        "characteristics", "--dyadic-j", "2", "--t-final", "0.1", "--starts", "-0.25,-0.125,0",
        "--out", &out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("char_y-0.125_eps0.25.csv")).unwrap();
    assert!(text.starts_with("t,x,u\n0,-0.125,"));
}

#[test]
fn bounds_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = nltv(&["bounds", "--dyadic-j", "4", "--tau", "1", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("tau,epsilon,j,series,count,dyadic,measured_tv,reconstructed_tv"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..3], ["1", "0.0625", "4"]);
    assert_eq!(&row[4..], ["22", "22", "", ""]);
    assert!(dir.path().join("bounds.csv").exists());
}

#[test]
fn small_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let o = nltv(&["sweep", "--j-list", "1,2", "--tau", "0,0.1", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 5);
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv, stdout(&o));
}

#[test]
fn empty_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let o = nltv(&["sweep", "--j-list", "", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn mechanism_demo() {
    let dir = tempfile::tempdir().unwrap();
    let o = nltv(&["mechanism", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    let manifest = std::fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    assert!(manifest.contains("epsilon = 0.4\ntau = 0.05\ndx = 0.0005\n"), "{manifest}");
    let o = nltv(&["mechanism", "--h", "0.5", "--epsilon", "0.4", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = nltv(&["verify", "bounds", "characteristics"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS non-crossing") && s.contains("PASS bound chain"));
    assert_eq!(nltv(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nltv(&["simulate", "--epsilon", "0.1", "--dyadic-j", "3"]).status.code(), Some(2));
    assert_eq!(nltv(&["frobnicate"]).status.code(), Some(2));
}
