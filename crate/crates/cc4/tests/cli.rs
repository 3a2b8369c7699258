//! Exit-code and output-format contract of the `cc4` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cc4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cc4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cc4-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn solve_feasible_point() {
    let out = cc4(&["solve", "--s", "1", "--t", "2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "solve");
    assert_eq!(v["result"]["feasible"], true);
    assert_eq!(v["result"]["region"], "D");
    assert_eq!(v["result"]["residual"]["is_central"], true);
    let m1 = v["result"]["masses"]["m1"].as_f64().unwrap();
    assert!((m1 - 2.683_205_042_182_464).abs() < 1e-12);
}

#[test]
fn solve_infeasible_point_exits_3() {
    let out = cc4(&["solve", "--s", "0.5", "--t", "2"]);
    assert_eq!(code(&out), 3);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["feasible"], false);
    assert!(v["result"]["masses"]["m4"].as_f64().unwrap() < 0.0);
}

#[test]
fn solve_rejects_bad_geometry() {
    assert_eq!(code(&cc4(&["solve", "--s", "2", "--t", "1"])), 2);
    assert_eq!(code(&cc4(&["solve", "--s", "1"])), 2);
    assert_eq!(code(&cc4(&["solve", "--s", "1", "--t", "nope"])), 2);
}

#[test]
fn solve_degenerate_exits_4() {
    let out = cc4(&[
        "solve",
        "--s",
        "0.5773502691896258",
        "--t",
        "1.7320508075688772",
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn special_by_m2_and_by_m4() {
    let out = cc4(&["special", "--lambda", "1", "--m2", "1"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let m4 = v["result"]["solution"]["m4"].as_f64().unwrap();
    assert!((m4 - 0.962_250_448_649_376_27).abs() < 1e-12);
    assert_eq!(v["result"]["residual"]["is_central"], true);

    // Round trip: request that m4 back.
    let out = cc4(&["special", "--lambda", "1", "--m4", "0.96225044864937627"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let m4_rt = v["result"]["solution"]["m4"].as_f64().unwrap();
    assert!((m4_rt - m4).abs() < 1e-12);
}

#[test]
fn special_boundary_exits_3() {
    let out = cc4(&["special", "--lambda", "1", "--m2", "2.6666666666666665"]);
    assert_eq!(code(&out), 3);
    // Exactly one of --m2/--m4 required.
    assert_eq!(code(&cc4(&["special", "--lambda", "1"])), 2);
    assert_eq!(code(&cc4(&["special", "--m4", "1"])), 2);
}

#[test]
fn scan_single_cell_and_bad_paths() {
    let dir = tmpdir("scan");
    let out_path = dir.join("one.csv");
    let out = cc4(&[
        "scan",
        "--res",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,t,label,p1,p2,p3,p4,p5,m1,m3,m4,c_y"
    );
    assert_eq!(lines.count(), 1);
    assert!(out_path.with_extension("json").exists());

    // Unwritable output.
    let out = cc4(&["scan", "--res", "1", "--out", "/no/such/dir/x.csv"]);
    assert_eq!(code(&out), 5);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_box_below_diagonal_warns() {
    let dir = tmpdir("scan-inv");
    let out_path = dir.join("inv.csv");
    let out = cc4(&[
        "scan", "--smin", "2.0", "--smax", "3.0", "--tmin", "0.1", "--tmax", "1.0", "--res", "8",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("warning"), "stderr: {stderr}");
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.lines().skip(1).all(|l| l.contains("Invalid")));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn curves_outputs() {
    let dir = tmpdir("curves");
    let out_path = dir.join("c.csv");
    let out = cc4(&["curves", "--curve", "p2", "--n", "100", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&out_path).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    // 100 p2 samples plus the flagged triple-point row.
    assert_eq!(rows.len(), 101);
    for row in rows.iter().take(100) {
        let defect: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(defect < 1e-11, "row {row}");
    }
    assert!(rows[100].starts_with("triple,"));

    let out_path = dir.join("p1.csv");
    let out = cc4(&["curves", "--curve", "p1", "--n", "5", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&out_path).unwrap();
    let p1_rows: Vec<&str> = text.lines().skip(1).filter(|l| l.starts_with("p1,")).collect();
    assert_eq!(p1_rows.len(), 5);
    for row in &p1_rows {
        assert_eq!(row.split(',').nth(2).unwrap(), "1.7320508075688772");
    }

    let out_path = dir.join("p4.csv");
    let out = cc4(&["curves", "--curve", "p4", "--n", "3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&out_path).unwrap();
    for row in text.lines().skip(1).filter(|l| l.starts_with("p4,")) {
        let mut it = row.split(',');
        it.next();
        let s: f64 = it.next().unwrap().parse().unwrap();
        let t: f64 = it.next().unwrap().parse().unwrap();
        assert!((t - s - (1.0 + s * s).sqrt()).abs() < 1e-14);
    }

    assert_eq!(code(&cc4(&["curves", "--curve", "p9", "--out", "x.csv"])), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn simulate_contract() {
    let dir = tmpdir("sim");
    let out_path = dir.join("traj.csv");
    let out = cc4(&[
        "simulate", "--s", "1", "--t", "2", "--periods", "1", "--steps-per-period", "2000",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["passed"], true);
    assert!(v["result"]["drifts"]["max_distance_drift"].as_f64().unwrap() < 1e-6);
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "step,time,x1,y1,x2,y2,x3,y3,x4,y4,energy_drift,L_drift,maxdist_drift"
    );
    assert_eq!(text.lines().count(), 2002); // header + steps 0..=2000

    // Infeasible shape.
    let out = cc4(&["simulate", "--s", "0.5", "--t", "2", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);

    // Zero-length run: header only.
    let out_path = dir.join("zero.csv");
    let out = cc4(&[
        "simulate", "--s", "1", "--t", "2", "--periods", "0",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap().lines().count(), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn eps_sign_env_override() {
    // A huge tolerance turns a generic point into Boundary and the solve
    // into a degenerate denominator.
    let out = Command::new(env!("CARGO_BIN_EXE_cc4"))
        .args(["solve", "--s", "1", "--t", "2"])
        .env("CC4_EPS_SIGN", "0.99")
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 4);
}
