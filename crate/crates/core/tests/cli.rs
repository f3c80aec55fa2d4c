use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tangent_count::io::cli::{run_with, EXIT_AUDIT, EXIT_USAGE};
use tangent_count::io::svg::count_markers;
use tangent_count::io::Scenario;

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("presets")
        .join(name)
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(
        std::iter::once("tangent-count").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn call_preset(cmd: &str, name: &str, extra: &[&str]) -> (i32, Value) {
    let p = preset(name);
    let mut args = vec![cmd, "--scenario", p.to_str().unwrap()];
    args.extend(extra);
    let (code, out, err) = call(&args);
    let text = if code == 0 { out } else { err };
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

#[test]
fn every_preset_parses() {
    for entry in std::fs::read_dir(preset("")).unwrap() {
        let path = entry.unwrap().path();
        Scenario::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn verify_far_circle() {
    let (code, v) = call_preset("verify", "far_circle_d2.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["N_enum"], 2);
    assert_eq!(v["N_formula"], 2);
    assert_eq!(v["match"], true);
}

#[test]
fn k_fold_presets() {
    for (name, k) in [
        ("m3", -3),
        ("m2", -2),
        ("m1", -1),
        ("0", 0),
        ("1", 1),
        ("2", 2),
        ("3", 3),
    ] {
        let (code, v) = call_preset("verify", &format!("k_fold_{name}_d2.json"), &[]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["N_enum"], 2 * k);
        assert_eq!(v["N_formula"], 2 * k);
    }
}

#[test]
fn count_commands_check_degree() {
    let (code, v) = call_preset("count-lines", "circle_d1.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["N"], 2);
    let (code, v) = call_preset("count-conics", "diagonal_circle_d2.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["N"], 4);
    let (code, _) = call_preset("count-lines", "far_circle_d2.json", &[]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn formula_and_index() {
    let (code, v) = call_preset("formula", "corner_circle_d2.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["N_formula"], 0);
    assert_eq!(v["excluded"].as_array().unwrap().len(), 2);
    let (code, v) = call_preset("formula", "cubic_strata_d3.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["wd"], 8);
    assert_eq!(v["N_formula"], 12);
    let (code, v) = call_preset("index", "figure_eight_d1.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["whitney"], 0);
    assert_eq!(v["self_intersections"].as_array().unwrap().len(), 1);
}

#[test]
fn audit_failure_exit_code() {
    let (code, v) = call_preset("verify", "symmetric_circle_d2.json", &[]);
    assert_eq!(code, EXIT_AUDIT);
    assert_eq!(v["error"], "Audit");
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn d3_verify_is_formula_only() {
    let (code, v) = call_preset("verify", "cubic_strata_d3.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["N_enum"], Value::Null);
    assert_eq!(v["N_formula"], 12);
}

#[test]
fn scan_reports_one_crossing() {
    let (code, v) = call_preset("scan", "wall_crossing_d2.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["crossings"].as_array().unwrap().len(), 1);
    assert_eq!(v["jumps"][0]["delta_n"], 2);
}

#[test]
fn fti_presets_and_seed_override() {
    let (code, v) = call_preset("fti", "fti_two_kink.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["sum"], 0);
    let (code, a) = call_preset("fti", "fti_suite_lines.json", &["--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(a["seed"], 9);
    assert_eq!(a["all_zero"], true);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let a = call_preset("verify", "diagonal_circle_d2.json", &[]);
    let b = call_preset("verify", "diagonal_circle_d2.json", &[]);
    assert_eq!(a, b);
    let report: tangent_count::io::cli::Versioned<tangent_count::invariant::InvariantReport> =
        serde_json::from_value(a.1.clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), a.1);
}

#[test]
fn tolerance_overrides() {
    let (code, v) = call_preset(
        "verify",
        "far_circle_d2.json",
        &["--grid", "8192", "--tol-root", "1e-13"],
    );
    assert_eq!(code, 0);
    assert_eq!(v["N_enum"], 2);
    let (code, _) = call_preset("verify", "far_circle_d2.json", &["--grid", "3"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn out_dir_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _) = call_preset("verify", "far_circle_d2.json", &["--out", d]);
    assert_eq!(code, 0);
    let saved: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap())
            .unwrap();
    assert_eq!(saved["N_enum"], 2);

    let p = preset("far_circle_d2.json");
    let (code, svg, _) = call(&["render", "--scenario", p.to_str().unwrap(), "--out", d]);
    assert_eq!(code, 0);
    assert_eq!(count_markers(&svg), 2);
    assert_eq!(
        std::fs::read_to_string(dir.path().join("scene.svg")).unwrap(),
        svg
    );
}

#[test]
fn render_path_writes_timeline() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(preset("wall_crossing_d2.json"))
        .unwrap()
        .replace("\"samples\": 200", "\"samples\": 12");
    let scenario = dir.path().join("short.json");
    std::fs::write(&scenario, text).unwrap();
    let out = dir.path().join("frames");
    let (code, stdout, _) = call(&[
        "render",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["files"].as_array().unwrap().len(), 12);
    assert!(out.join("sample_0011.svg").exists());
    assert!(out.join("timeline.json").exists());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tangent-count");
    let out = Command::new(bin)
        .args(["constants", "--nd", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nd"]["value"], 87304);

    let out = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));

    let out = Command::new(bin)
        .args([
            "verify",
            "--scenario",
            preset("symmetric_circle_d2.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_AUDIT));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["exit_code"], EXIT_AUDIT);
}
