//! End-to-end tests of the command-line interface: exit codes, output
//! formats, determinism and the documented example invocations.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spherevol"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn spherevol")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 stdout")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout_of(out).trim()).expect("JSON stdout")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn spherevol");
    child
        .stdin
        .as_mut()
        .expect("stdin")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait")
}

#[test]
fn bound_examples_match_documented_values() {
    let out = run(&["bound", "icosahedron", "--n", "12"]);
    assert!(out.status.success());
    let v = json_of(&out)["value"].as_f64().unwrap();
    assert!((v - 2.5361507101204097).abs() < 1e-9);

    let out = run(&["bound", "uniform", "--f", "12", "--c", "1.910633"]);
    let v = json_of(&out)["value"].as_f64().unwrap();
    assert!((v - 1.539601).abs() < 1e-6);

    let out = run(&["bound", "u-triangle", "--tau", "1.5707963"]);
    let v = json_of(&out)["value"].as_f64().unwrap();
    assert!((v - 1.0 / 6.0).abs() < 1e-6);
    assert_eq!(json_of(&out)["formula"], "u-triangle");
}

#[test]
fn degree_flag_converts_angle_inputs() {
    let deg = run(&["bound", "v-tau-c", "--tau", "60", "--c", "90", "--deg"]);
    let rad = run(&[
        "bound",
        "v-tau-c",
        "--tau",
        "1.0471975511965976",
        "--c",
        "1.5707963267948966",
    ]);
    assert_eq!(json_of(&deg)["value"], json_of(&rad)["value"]);
}

#[test]
fn domain_query_and_constants() {
    let out = run(&["domain", "--query", "0.6283185", "1.9"]);
    assert!(out.status.success());
    let j = json_of(&out);
    assert_eq!(j["class"], "monotone");
    assert!((j["f_tau"].as_f64().unwrap() - 1.83487).abs() < 1e-4);
    assert!((j["omega"].as_f64().unwrap() - 0.697715).abs() < 1e-4);
    assert!(j["dvdc"].as_f64().unwrap() < 0.0);

    let out = run(&["domain", "--query", "0.4", "0.8"]);
    assert_eq!(json_of(&out)["class"], "concave");

    let out = run(&["domain", "--omega"]);
    assert!((json_of(&out)["omega"].as_f64().unwrap() - 0.697715).abs() < 1e-4);

    let out = run(&["domain", "--quartic"]);
    let j = json_of(&out);
    let roots = j["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 4);
    for p in j["pair_products"].as_array().unwrap() {
        assert!((p.as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn domain_grid_is_csv_with_header_and_deterministic() {
    let a = run(&["domain", "--grid", "16"]);
    assert!(a.status.success());
    let text = stdout_of(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau,c,v,det_sign,dvdc_sign"));
    assert_eq!(text.lines().count(), 1 + 16 * 16);
    assert!(!text.contains(','.to_string().repeat(2).as_str()));
    let b = run(&["domain", "--grid", "16"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mesh_report_pipeline_reproduces_the_sharp_examples() {
    let mesh = run(&["mesh", "rhombic-star-p"]);
    assert!(mesh.status.success());
    let report = run_with_stdin(&["report", "-"], stdout_of(&mesh));
    assert!(report.status.success());
    let j = json_of(&report);
    assert!((j["volume"].as_f64().unwrap() - 2.309401).abs() < 1e-6);
    assert!((j["bound"].as_f64().unwrap() - 2.309401).abs() < 1e-6);
    assert!(j["slack"].as_f64().unwrap().abs() <= 1e-9);

    let mesh = run(&["mesh", "hull-q"]);
    let report = run_with_stdin(&["report", "-"], stdout_of(&mesh));
    let j = json_of(&report);
    assert!((j["volume"].as_f64().unwrap() - 8.0 / 3.0).abs() < 1e-6);
    assert!((j["bound"].as_f64().unwrap() - 8.0 / 3.0).abs() < 1e-6);

    // a quarter turn about z assembles the cube from two tetrahedra
    let mesh = run(&["mesh", "two-tetrahedra", "--axis", "0,0,1", "--angle", "90", "--deg"]);
    let report = run_with_stdin(&["report", "-"], stdout_of(&mesh));
    let j = json_of(&report);
    assert!((j["volume"].as_f64().unwrap() - 1.5396007178390020).abs() < 1e-9);
}

#[test]
fn report_rejects_a_non_star_mesh_naming_the_face() {
    // a tetrahedron with every face flipped is a valid closed surface but
    // negatively oriented, so the star-volume check fails on face 0
    let mesh = run(&["mesh", "tetrahedron"]);
    let mut j: serde_json::Value = serde_json::from_str(stdout_of(&mesh).trim()).unwrap();
    let faces = j["faces"].as_array_mut().unwrap();
    for f in faces.iter_mut() {
        let arr = f.as_array().unwrap().clone();
        *f = serde_json::json!([arr[0], arr[2], arr[1]]);
    }
    let out = run_with_stdin(&["report", "-"], &j.to_string());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("face 0"), "stderr: {err}");
    assert_eq!(err.trim().lines().count(), 1, "one-line diagnostic");
}

#[test]
fn exit_code_matrix() {
    // 0: success
    assert_eq!(run(&["bound", "u-triangle", "--tau", "1.0"]).status.code(), Some(0));
    let ok = run(&["verify", "cap-sum", "--samples", "200", "--seed", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_of(&ok)["violations"], 0);
    // 1: verification failure (the slack gate demands an impossible margin)
    let gated = run(&[
        "verify",
        "dominance",
        "--samples",
        "100",
        "--seed",
        "1",
        "--fail-above",
        "-1",
    ]);
    assert_eq!(gated.status.code(), Some(1));
    assert_eq!(json_of(&gated)["violations"], 0);
    // the gate threshold also parses in scientific notation, and a
    // satisfiable margin passes
    let margin = run(&[
        "verify",
        "dominance",
        "--samples",
        "100",
        "--seed",
        "1",
        "--fail-above",
        "-1e-12",
    ]);
    assert_eq!(margin.status.code(), Some(0));
    // 2: domain errors with a one-line diagnostic
    let dom = run(&["bound", "u-triangle", "--tau", "7.0"]);
    assert_eq!(dom.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&dom.stderr).trim().lines().count(), 1);
    let missing = run(&["bound", "u-triangle"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--tau"));
    // 2: usage errors from the argument parser
    assert_eq!(run(&["bound", "no-such-formula", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["domain"]).status.code(), Some(2)); // no mode selected
    assert_eq!(run(&["verify", "dominance", "--samples", "10"]).status.code(), Some(2)); // seed required
    assert_eq!(run(&["domain", "--query", "9.0", "1.0"]).status.code(), Some(2));
}

#[test]
fn seeded_commands_are_byte_identical_across_runs_and_threads() {
    let a = run(&["optimize", "n-points", "--n", "5", "--seed", "9", "--restarts", "4"]);
    let b = run(&["optimize", "n-points", "--n", "5", "--seed", "9", "--restarts", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "optimize", "n-points", "--n", "5", "--seed", "9", "--restarts", "4", "--threads", "4",
    ]);
    assert_eq!(a.stdout, c.stdout);
    let d = run(&["optimize", "n-points", "--n", "5", "--seed", "10", "--restarts", "4"]);
    assert_ne!(a.stdout, d.stdout, "different seeds explore differently");

    let v1 = run(&["verify", "dominance", "--samples", "300", "--seed", "11"]);
    let v2 = run(&["verify", "dominance", "--samples", "300", "--seed", "11"]);
    assert_eq!(v1.stdout, v2.stdout);
}

#[test]
fn optimize_examples_reach_their_documented_values() {
    let out = run(&["optimize", "two-tetrahedra", "--seed", "7", "--restarts", "8"]);
    assert!(out.status.success());
    let j = json_of(&out);
    assert!((j["best_value"].as_f64().unwrap() - 1.539601).abs() < 1e-5);
    assert_eq!(j["cube_pattern"], true);

    let out = run(&["optimize", "constrained-sum", "--seed", "1"]);
    let j = json_of(&out);
    assert!((j["best_value"].as_f64().unwrap() - 1.978356).abs() < 1e-4);
    assert!((j["oracle_value"].as_f64().unwrap() - 1.9783562941988446).abs() < 1e-9);
}

#[test]
fn mesh_files_round_trip_through_the_out_flag() {
    let dir = std::env::temp_dir().join(format!("spherevol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("icosa.json");
    let path_str = path.to_str().unwrap();
    let out = run(&["mesh", "icosahedron", "--out", path_str]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report = run(&["report", path_str]);
    assert!(report.status.success());
    let j = json_of(&report);
    assert!((j["volume"].as_f64().unwrap() - 2.5361507101204097).abs() < 1e-9);
    assert!(j["slack"].as_f64().unwrap().abs() < 1e-9);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn numbers_are_printed_with_fifteen_significant_digits() {
    let out = run(&["bound", "icosahedron", "--n", "12"]);
    let text = stdout_of(&out);
    assert!(text.contains("2.53615071012041"), "stdout: {text}");
    // shortest-round-trip: no trailing zero padding, no exponent noise
    assert!(!text.contains("2.536150710120410"));
    let out = run(&["bound", "u-triangle", "--tau", "1.5707963267948966"]);
    assert!(stdout_of(&out).contains("0.166666666666667"));
}
