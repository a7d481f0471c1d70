use std::path::Path;
use std::process::{Command, Output};

fn rmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmt")).args(args).output().expect("run rmt")
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(2).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn density_writes_csv_with_config_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mp.csv");
    let o = rmt(&["density", "--c", "0.3", "--points", "400", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    let comment = lines.next().unwrap();
    assert!(comment.starts_with(&format!("# rmt {} ", rmt_core::VERSION)));
    assert!(comment.contains("\"c\":0.3") && comment.contains("\"command\":\"density\""));
    assert_eq!(lines.next(), Some("x,density"));
    let data = rows(&text);
    assert_eq!(data.len(), 400);
    // trapezoid over the support
    let mass: f64 = data.windows(2).map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1])).sum();
    assert!((mass - 1.0).abs() < 5e-3, "{mass}");
    // no stray temporary files
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn phase_space_boundary_is_closed() {
    let o = rmt(&["phase-space", "--c", "0.3", "--points", "50"]);
    assert!(o.status.success());
    let data = rows(&String::from_utf8(o.stdout).unwrap());
    let (first, last) = (&data[0], &data[data.len() - 1]);
    assert!((first[0] - (1.0 - 0.3f64.sqrt()).powi(2)).abs() < 1e-15);
    assert!((last[0] - (1.0 + 0.3f64.sqrt()).powi(2)).abs() < 1e-15);
    assert_eq!(first[1], 0.0);
    assert_eq!(last[1], 0.0);
    assert!(data.iter().all(|r| r[1] >= 0.0 && r[2] == -r[1]));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["density", "--c", "1.5"][..],
        &["density", "--c", "0.3", "--unknown"],
        &["kernel", "--kind", "bessel"],
        &["kernel", "--kind", "sine", "--alpha", "1"],
        &["kernel", "--kind", "bessel", "--alpha", "0", "--grid", "5:1:3"],
        &["kernel", "--kind", "wishart", "--N", "5", "--T", "3"],
        &["converge", "--regime", "bulk", "--c", "0.5", "--x0", "9"],
        &["converge", "--ladder", "50,20", "--alpha", "0"],
        &["sample", "--N", "10"],
        &["verify", "--suite", "nope"],
        &[],
    ] {
        let o = rmt(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn kernel_on_grid_matches_library() {
    let o = rmt(&["kernel", "--kind", "bessel", "--alpha", "0", "--grid", "0:20:64"]);
    assert!(o.status.success());
    let data = rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(data.len(), 64 * 64);
    for r in data.iter().step_by(97) {
        assert_eq!(r[2], rmt_core::limits::bessel_kernel(0.0, r[0], r[1]).unwrap());
    }
    let o = rmt(&["kernel", "--kind", "wishart", "--N", "4", "--T", "6", "--grid", "0.5:8:5", "--diagonal"]);
    assert!(o.status.success());
    assert_eq!(rows(&String::from_utf8(o.stdout).unwrap()).len(), 5);
}

#[test]
fn json_carries_schema() {
    let o = rmt(&["converge", "--alpha", "1", "--ladder", "20,40", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "rmt/1");
    assert_eq!(v["version"], rmt_core::VERSION);
    assert_eq!(v["config"]["command"], "converge");
    assert_eq!(v["result"]["report"]["ladder"], serde_json::json!([20, 40]));
    assert_eq!(v["result"]["monotone"], true);
}

#[test]
fn sample_is_reproducible_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let p = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_rmt"))
            .args(["sample", "--N", "20", "--T", "30", "--draws", "16", "--seed", "3", "--out", p.to_str().unwrap()])
            .env("RMT_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        std::fs::read(p).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "4");
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 2 + 20 * 16);
}

#[test]
fn verify_suite_reports_checks() {
    let o = rmt(&["verify", "--suite", "macroscopic", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["failed"], 0);
    assert!(v["result"]["checks"].as_array().unwrap().len() >= 3);
}

#[test]
fn unwritable_output_is_a_runtime_failure() {
    let o = rmt(&["density", "--c", "0.5", "--out", Path::new("/nonexistent/dir/x.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
