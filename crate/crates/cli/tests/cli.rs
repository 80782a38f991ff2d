//! Contract tests for the `curlax` binary: exit codes, report schemas,
//! and determinism, driven through the compiled executable.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn out_dir(test: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(test);
    fs::create_dir_all(&dir).expect("create test output dir");
    dir
}

fn curlax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curlax"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read_json(dir: &Path, name: &str) -> Value {
    let text = fs::read_to_string(dir.join(name)).unwrap_or_else(|e| {
        panic!("missing report {}: {e}", dir.join(name).display());
    });
    serde_json::from_str(&text).expect("valid report JSON")
}

fn num(v: &Value, pointer: &str) -> f64 {
    v.pointer(pointer)
        .and_then(Value::as_f64)
        .unwrap_or_else(|| panic!("missing number at {pointer}"))
}

fn check_envelope(report: &Value, command: &str) {
    assert_eq!(report["format_version"], 1);
    assert_eq!(report["command"], command);
    assert!(report["tool_version"].is_string());
    let sha = report["input_sha256"].as_str().expect("input hash");
    assert_eq!(sha.len(), 64, "SHA-256 hex digest");
    assert!(report["config"].is_object(), "resolved config echoed");
}

// ---------------------------------------------------------------------------
// criterion

#[test]
fn criterion_reports_the_rectangle_verdict() {
    let dir = out_dir("criterion_rectangle");
    let out = curlax(&[
        "criterion",
        "--input",
        fixture("rectangle.json").to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
        "--svg",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("not_optimal_length"));

    let report = read_json(&dir, "criterion_report.json");
    check_envelope(&report, "criterion");
    assert_eq!(report["report"]["verdict"], "not_optimal_length");
    assert!((num(&report, "/report/len_L_minus") - 1.0).abs() < 1e-12);
    assert!((num(&report, "/report/len_L_plus") - 5.0).abs() < 1e-12);

    let svg = fs::read_to_string(dir.join("criterion.svg")).expect("svg written");
    assert!(svg.starts_with("<svg"));
}

#[test]
fn criterion_axis_contact_wins_over_lengths() {
    let dir = out_dir("criterion_axis");
    let out = curlax(&[
        "criterion",
        "--input",
        fixture("axis_touching.json").to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let report = read_json(&dir, "criterion_report.json");
    assert_eq!(report["report"]["verdict"], "not_optimal_axis");
    assert_eq!(report["report"]["axis_intersect"], true);
}

#[test]
fn criterion_verdict_never_drives_the_exit_code() {
    // Three different verdicts, one exit code.
    for (name, verdict) in [
        ("rectangle.json", "not_optimal_length"),
        ("annulus_big_hole.json", "inconclusive"),
        ("axis_touching.json", "not_optimal_axis"),
    ] {
        let dir = out_dir(&format!("criterion_exit_{name}"));
        let out = curlax(&[
            "criterion",
            "--input",
            fixture(name).to_str().unwrap(),
            "--out-dir",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0, "{name} should exit 0");
        let report = read_json(&dir, "criterion_report.json");
        assert_eq!(report["report"]["verdict"], verdict, "{name}");
    }
}

// ---------------------------------------------------------------------------
// malformed and invalid inputs

#[test]
fn truncated_json_exits_2_naming_the_byte_offset() {
    let dir = out_dir("truncated");
    let full = fs::read_to_string(fixture("torus.json")).unwrap();
    let cut = 50;
    let path = dir.join("truncated.json");
    fs::write(&path, &full[..cut]).unwrap();

    let out = curlax(&[
        "criterion",
        "--input",
        path.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("parse error at byte "), "stderr: {err}");
    let offset: usize = err
        .split("byte ")
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .and_then(|s| s.parse().ok())
        .expect("byte offset in message");
    assert!(
        offset >= cut - 2 && offset <= cut,
        "offset {offset} should point at the truncation ({cut})"
    );
}

#[test]
fn unknown_keys_are_rejected_with_exit_3() {
    let dir = out_dir("unknown_keys");
    let path = dir.join("extra.json");
    fs::write(
        &path,
        r#"{"format_version":1,"metric":"euclidean","outer":[[1,0],[3,0],[3,1],[1,1]],"spacing":3}"#,
    )
    .unwrap();
    let out = curlax(&[
        "criterion",
        "--input",
        path.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("unknown field"), "{}", stderr(&out));
}

#[test]
fn missing_input_exits_3() {
    let dir = out_dir("missing_input");
    let out = curlax(&[
        "solve",
        "--input",
        dir.join("does_not_exist.json").to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn hole_bearing_solve_exits_3_as_unsupported() {
    let dir = out_dir("hole_solve");
    let out = curlax(&[
        "solve",
        "--input",
        fixture("annulus_big_hole.json").to_str().unwrap(),
        "--h",
        "0.1",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(
        stderr(&out).contains("multiply-connected cross-sections unsupported"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn unattainable_tolerance_exits_4_with_residual() {
    let dir = out_dir("nonconvergence");
    let out = curlax(&[
        "solve",
        "--input",
        fixture("torus.json").to_str().unwrap(),
        "--h",
        "0.1",
        "--tol",
        "1e-300",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 4);
    assert!(
        stderr(&out).contains("residual"),
        "stderr: {}",
        stderr(&out)
    );
}

// ---------------------------------------------------------------------------
// solve

#[test]
fn solve_ball_matches_the_reference_eigenvalue() {
    let dir = out_dir("solve_ball");
    let out = curlax(&[
        "solve",
        "--input",
        fixture("ball.json").to_str().unwrap(),
        "--h",
        "0.05",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let report = read_json(&dir, "solve_report.json");
    check_envelope(&report, "solve");
    assert_eq!(report["mode"], "ball_like");
    let lambda = num(&report, "/lambda_plus");
    let reference = 4.493409457909064;
    assert!(
        (lambda - reference).abs() / reference < 0.02,
        "lambda {lambda} vs {reference}"
    );

    let csv = fs::read_to_string(dir.join("solve_psi.csv")).expect("csv written");
    assert!(csv.starts_with("r,z,psi\n"));
    assert_eq!(
        csv.lines().count() - 1,
        report["pairs"][0]["psi"].as_array().unwrap().len(),
        "one CSV row per vertex"
    );
    let svg = fs::read_to_string(dir.join("solve_contours.svg")).expect("svg written");
    assert!(svg.starts_with("<svg"));
}

#[test]
fn solve_reports_are_byte_identical_across_reruns() {
    let dir = out_dir("solve_rerun");
    let input = fixture("torus.json");
    let args = [
        "solve",
        "--input",
        input.to_str().unwrap(),
        "--h",
        "0.06",
        "--out-dir",
        dir.to_str().unwrap(),
    ];
    assert_eq!(exit_code(&curlax(&args)), 0);
    let first: Vec<(String, Vec<u8>)> = ["solve_report.json", "solve_psi.csv", "solve_contours.svg"]
        .iter()
        .map(|n| (n.to_string(), fs::read(dir.join(n)).unwrap()))
        .collect();
    assert_eq!(exit_code(&curlax(&args)), 0);
    for (name, bytes) in &first {
        assert_eq!(
            &fs::read(dir.join(name)).unwrap(),
            bytes,
            "{name} changed between reruns"
        );
    }
}

// ---------------------------------------------------------------------------
// diagnose

#[test]
fn diagnose_accepts_both_input_kinds() {
    let solve_dir = out_dir("diagnose_solve");
    let input = fixture("torus.json");
    let args = [
        "solve",
        "--input",
        input.to_str().unwrap(),
        "--h",
        "0.06",
        "--out-dir",
        solve_dir.to_str().unwrap(),
    ];
    assert_eq!(exit_code(&curlax(&args)), 0);

    let from_file = out_dir("diagnose_from_file");
    let out = curlax(&[
        "diagnose",
        "--input",
        solve_dir.join("solve_report.json").to_str().unwrap(),
        "--out-dir",
        from_file.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let inline = out_dir("diagnose_inline");
    let out = curlax(&[
        "diagnose",
        "--input",
        fixture("torus.json").to_str().unwrap(),
        "--h",
        "0.06",
        "--out-dir",
        inline.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let a = read_json(&from_file, "diagnose_report.json");
    let b = read_json(&inline, "diagnose_report.json");
    check_envelope(&a, "diagnose");
    assert_eq!(a["config"]["input_kind"], "solve_report");
    assert_eq!(b["config"]["input_kind"], "cross_section");
    // Same solve either way: the diagnostics payloads agree exactly.
    assert_eq!(a["diagnostics"], b["diagnostics"]);

    let flux = num(&a, "/diagnostics/flux_balance").abs();
    assert!(flux < 1e-6, "constrained flux balance {flux}");
    for name in ["diagnose_boundary_speed.svg", "diagnose_contours.svg"] {
        assert!(from_file.join(name).exists(), "{name} written");
    }
}

#[test]
fn diagnose_ball_scores_a_nonconstant_boundary_field() {
    let dir = out_dir("diagnose_ball");
    let out = curlax(&[
        "diagnose",
        "--input",
        fixture("ball.json").to_str().unwrap(),
        "--h",
        "0.05",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let report = read_json(&dir, "diagnose_report.json");
    assert!(num(&report, "/diagnostics/constancy_score") > 0.9);
    assert!(
        report["diagnostics"]["flux_balance"].is_null(),
        "no harmonic Neumann field on a ball-like domain"
    );
}

// ---------------------------------------------------------------------------
// sweep

#[test]
fn sweep_scale_family_keeps_the_objective_constant() {
    let dir = out_dir("sweep_scales");
    let out = curlax(&[
        "sweep",
        "--input",
        fixture("sweep_scales.json").to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let csv = fs::read_to_string(dir.join("sweep.csv")).expect("csv written");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("label,parameter,h,lambda_plus,volume,objective")
    );
    let objectives: Vec<f64> = lines
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(objectives.len(), 3);
    for obj in &objectives {
        assert!(
            (obj - objectives[0]).abs() <= 1e-10 * objectives[0].abs(),
            "objective drifts across dilations: {objectives:?}"
        );
    }

    let report = read_json(&dir, "sweep_report.json");
    check_envelope(&report, "sweep");
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert!(report["family"]["family"]["scales"].is_object());
    assert!(dir.join("sweep_objective.svg").exists());
}

#[test]
fn sweep_center_family_orders_members_as_given() {
    let dir = out_dir("sweep_centers");
    let out = curlax(&[
        "sweep",
        "--input",
        fixture("sweep_centers.json").to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let report = read_json(&dir, "sweep_report.json");
    let params: Vec<f64> = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["parameter"].as_f64().unwrap())
        .collect();
    assert_eq!(params, vec![1.5, 2.0, 3.0, 4.0]);
}

#[test]
fn sweep_rejects_unknown_family_keys() {
    let dir = out_dir("sweep_unknown");
    let path = dir.join("bad_family.json");
    fs::write(
        &path,
        r#"{"format_version":1,"family":{"torus_centers":{"centers":[2.0],"minor_radius":0.5,"n_points":64,"h":0.1,"color":"red"}}}"#,
    )
    .unwrap();
    let out = curlax(&[
        "sweep",
        "--input",
        path.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("unknown field"), "{}", stderr(&out));
}

// ---------------------------------------------------------------------------
// verify-model

#[test]
fn verify_model_passes_and_ignores_the_seed_for_verdicts() {
    let dir = out_dir("verify_default");
    let out = curlax(&["verify-model", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let report = read_json(&dir, "verify_model_report.json");
    assert_eq!(report["format_version"], 1);
    assert_eq!(report["command"], "verify-model");
    assert_eq!(report["suite"]["all_pass"], true);

    let seeded_dir = out_dir("verify_seeded");
    let out = curlax(&[
        "verify-model",
        "--seed",
        "123456789",
        "--out-dir",
        seeded_dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let seeded = read_json(&seeded_dir, "verify_model_report.json");

    let verdicts = |r: &Value| -> Vec<(String, bool)> {
        r["suite"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                (
                    c["name"].as_str().unwrap().to_string(),
                    c["pass"].as_bool().unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(verdicts(&report), verdicts(&seeded));
}

#[test]
fn verify_model_injection_exits_5_naming_the_check() {
    let dir = out_dir("verify_injected");
    let out = curlax(&[
        "verify-model",
        "--inject-wrong-potential",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 5);
    assert!(
        stderr(&out).contains("concircular_position_hyperbolic_ball"),
        "stderr: {}",
        stderr(&out)
    );
    // The report is still written, recording the failure.
    let report = read_json(&dir, "verify_model_report.json");
    assert_eq!(report["suite"]["all_pass"], false);
}

#[test]
fn verify_model_writes_point_residuals_on_request() {
    let dir = out_dir("verify_points");
    let out = curlax(&[
        "verify-model",
        "--points-csv",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let csv = fs::read_to_string(dir.join("point_residuals.csv")).expect("csv written");
    assert!(csv.starts_with("check,point_index,residual\n"));
    assert!(csv.lines().count() > 100, "per-point traces recorded");
}

// ---------------------------------------------------------------------------
// mesh-info

#[test]
fn mesh_info_reports_triangulation_statistics() {
    let dir = out_dir("mesh_info");
    let out = curlax(&[
        "mesh-info",
        "--input",
        fixture("torus.json").to_str().unwrap(),
        "--h",
        "0.05",
        "--out-dir",
        dir.to_str().unwrap(),
        "--svg",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let report = read_json(&dir, "mesh_info.json");
    check_envelope(&report, "mesh-info");
    assert!(num(&report, "/mesh/vertices") > 100.0);
    assert!(num(&report, "/mesh/triangles") > num(&report, "/mesh/vertices"));
    assert!(num(&report, "/mesh/min_angle_deg") > 20.0);
    // Solid-torus volume 2 pi^2 R a^2; the inscribed polygon sits slightly
    // inside the circle.
    let volume = num(&report, "/mesh/revolved_volume");
    let exact = 2.0 * std::f64::consts::PI.powi(2) * 2.0 * 0.25;
    assert!((volume - exact).abs() / exact < 0.02, "volume {volume}");
    assert!(dir.join("mesh_preview.svg").exists());
}
