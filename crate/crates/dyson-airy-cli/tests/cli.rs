use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyson-airy"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("DYSON_AIRY_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr_line(out: &Output) -> String {
    let text = String::from_utf8_lossy(&out.stderr);
    assert_eq!(text.lines().count(), 1, "{text}");
    text.trim().to_string()
}

#[test]
fn airy_zeros_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["airy", "zeros", "--count", "4"]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("airy_zeros.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j,a_j,ai_prime");
    let zeros: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    for (z, lit) in zeros.iter().zip([-2.33, -4.08, -5.52, -6.78]) {
        assert!((z - lit).abs() < 0.01, "{z}");
    }
    let m = json(&dir.path().join("airy_zeros.manifest.json"));
    assert_eq!(m["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(m["outputs"].as_array().unwrap().len(), 1);
}

#[test]
fn airy_start_is_admissible() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["config-check", "--generator", "airy", "--n", "100"]);
    assert!(out.status.success());
    let doc = json(&dir.path().join("config_check.json"));
    assert_eq!(doc["admissible"], true);
    assert_eq!(doc["schema"], 1);
}

#[test]
fn config_file_and_kernel_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("xi.json");
    fs::write(&cfg, r#"{"atoms":[{"x":-2.338107410459767,"mult":1},{"x":-4.08794944413097,"mult":1}]}"#).unwrap();
    let pts = dir.path().join("pts.csv");
    fs::write(&pts, "s,x,t,y\n0.5,-2,0.5,-2\n0.5,-3,1.0,-2.5\n").unwrap();
    let out = run(dir.path(), &["kernel", "eval", "--kind", "finite", "--config", cfg.to_str().unwrap(), "--points", pts.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("kernel_eval.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), "s,x,t,y,value");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn tw_curve_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["tw", "--from", "-3", "--to", "1", "--step", "1"]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("tw.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s,F_fredholm,F_painleve,delta");
    for l in lines {
        let delta: f64 = l.split(',').nth(3).unwrap().parse().unwrap();
        assert!(delta < 1e-8, "{l}");
    }
    let summary = json(&dir.path().join("tw.json"));
    assert_eq!(summary["outputs"]["fredholm_monotone"], true);
    assert!(summary["runtime_seconds"].as_f64().is_some());
}

#[test]
fn simulation_is_reproducible_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["simulate", "--generator", "airy", "--n", "3", "--times", "0.5,1", "--paths", "300", "--seed", "9", "--format", "csv"];
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let mut one = args.to_vec();
    one.extend(["--workers", "1"]);
    let mut three = args.to_vec();
    three.extend(["--workers", "3"]);
    assert!(run(&a, &one).status.success());
    assert!(run(&b, &three).status.success());
    let fa = fs::read(a.join("simulate.csv")).unwrap();
    let fb = fs::read(b.join("simulate.csv")).unwrap();
    assert_eq!(fa, fb);
    assert_eq!(String::from_utf8_lossy(&fa).lines().count(), 1 + 300 * 2 * 3);
    let (ma, mb) = (json(&a.join("simulate.manifest.json")), json(&b.join("simulate.manifest.json")));
    assert_eq!(ma["config_hash"], mb["config_hash"]);
    assert_eq!(ma["seed"], 9);
    assert_eq!((ma["workers"].as_u64(), mb["workers"].as_u64()), (Some(1), Some(3)));
}

#[test]
fn worker_count_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_dyson-airy"))
        .arg("--out-dir")
        .arg(dir.path())
        .args(["airy", "constants"])
        .env("DYSON_AIRY_WORKERS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&dir.path().join("airy_constants.manifest.json"))["workers"], 2);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).starts_with("error kind=usage code=2:"));
    let out = run(dir.path(), &["simulate", "--generator", "airy", "--n", "3", "--times", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).contains("seed"));
    // the manifest is written for failed runs too
    let m = json(&dir.path().join("simulate.manifest.json"));
    assert!(m["error"].as_str().unwrap().contains("code=2"));
}

#[test]
fn io_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, "x").unwrap();
    let out = run(&file, &["airy", "constants"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_line(&out).starts_with("error kind=io code=4:"));
    let out = run(dir.path(), &["config-check", "--config", "/nonexistent/xi.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_prints_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "--suite", "2,11"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 2);
    assert!(text.contains("2 of 2 passed"));
    let out = run(dir.path(), &["verify", "--suite", "99"]);
    assert_eq!(out.status.code(), Some(2));
}
