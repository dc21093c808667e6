//! End-to-end tests of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

fn conics(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conics"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_scene(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const SCENE: &str = r#"{
  "ball": {"type": "lp", "p": "inf"},
  "specs": [
    {"kind": "ellipse_foci", "f1": [-1, 0], "f2": [1, 0], "a": 2},
    {"kind": "leading_line", "focus": [0, 1], "line": {"point": [0, 0], "direction": [1, 0]}, "gamma": 1.0},
    {"kind": "bisector", "x": [-1, 0], "y": [1, 0]}
  ],
  "trace": {"n": 128, "extent": 4.0, "tol": 1e-10},
  "bbox": [[-4, -4], [4, 4]]
}"#;

#[test]
fn trace_writes_deterministic_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "scene.json", SCENE);
    for round in ["a", "b"] {
        let out = conics(
            &[
                "trace",
                "--scene",
                &scene,
                "--csv",
                &format!("out-{round}.csv"),
                "--svg",
                &format!("out-{round}.svg"),
            ],
            dir.path(),
        );
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let csv_a = std::fs::read(dir.path().join("out-a.csv")).unwrap();
    let csv_b = std::fs::read(dir.path().join("out-b.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    assert!(!csv_a.is_empty());
    let svg_a = std::fs::read(dir.path().join("out-a.svg")).unwrap();
    let svg_b = std::fs::read(dir.path().join("out-b.svg")).unwrap();
    assert_eq!(svg_a, svg_b);
    // Blank line separates the two traced curves in the CSV.
    let text = String::from_utf8(csv_a).unwrap();
    assert!(text.contains("\n\n"));
}

#[test]
fn trace_rejects_empty_locus_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(
        dir.path(),
        "empty.json",
        r#"{
          "ball": {"type": "lp", "p": 2.0},
          "specs": [{"kind": "ellipse_foci", "f1": [-1, 0], "f2": [1, 0], "a": 0.5}],
          "bbox": [[-4, -4], [4, 4]]
        }"#,
    );
    let out = conics(
        &["trace", "--scene", &scene, "--csv", "out.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("empty locus"), "{stderr}");
}

#[test]
fn malformed_scene_gives_diagnostic_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "bad.json", "{\n  \"ball\": 3,\n}");
    let out = conics(&["trace", "--scene", &scene], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line"), "no position in: {stderr}");

    // Unknown flags are also usage errors.
    let out = conics(&["trace", "--nonsense"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_thm2_on_euclidean_ball_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = conics(
        &[
            "verify",
            "--claims",
            "thm2",
            "--ball",
            "lp:2",
            "--json",
            "report.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS thm2-i"), "{stdout}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    let all_pass = report
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"].as_bool().unwrap());
    assert!(all_pass);
}

#[test]
fn verify_unknown_claim_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = conics(
        &["verify", "--claims", "thm9", "--ball", "lp:2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexample_reports_published_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = conics(&["counterexample", "--json", "ce.json"], dir.path());
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ce.json")).unwrap())
            .unwrap();
    assert_eq!(report["metrics"]["s"].as_f64(), Some(1.0));
    let r = report["metrics"]["r"].as_f64().unwrap();
    assert!((r - 2.0 / 3.0).abs() < 1e-12);
    let ratio = report["metrics"]["ratio_minus_z"].as_f64().unwrap();
    assert!((ratio - (12.0 - 2.0f64.sqrt()) / 12.0).abs() < 1e-6);
    assert_eq!(report["pass"].as_bool(), Some(true));
}

#[test]
fn sip_subcommand_reports_zero_directions() {
    let dir = tempfile::tempdir().unwrap();
    let out = conics(
        &[
            "sip", "--p", "2", "--matrix", "1,0,0,-1", "--json", "sip.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sip.json")).unwrap())
            .unwrap();
    assert_eq!(report["self_adjoint"].as_bool(), Some(true));
    let zeros = report["zero_directions_deg"].as_array().unwrap();
    assert_eq!(zeros.len(), 2);
    assert!((zeros[0].as_f64().unwrap() - 45.0).abs() < 1e-7);
    assert!((zeros[1].as_f64().unwrap() - 135.0).abs() < 1e-7);

    // Square-operator check for a user-supplied root.
    let out = conics(
        &["sip", "--p", "2", "--matrix", "4,0,0,1", "--square-root", "2,0,0,-1"],
        dir.path(),
    );
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("sip json on stdout");
    assert_eq!(report["square_check"]["is_square"].as_bool(), Some(true));

    // A shear at p = 3 has a nonlinear adjoint.
    let out = conics(
        &[
            "sip",
            "--p",
            "3",
            "--matrix",
            "1,1,0,1",
            "--json",
            "shear.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("shear.json")).unwrap())
            .unwrap();
    assert_eq!(report["self_adjoint"].as_bool(), Some(false));
    assert!(
        report["adjoint_nonlinearity_witness"]["additivity_gap"]
            .as_f64()
            .unwrap()
            > 1e-3
    );
}

#[test]
fn grid_emits_pgm_per_locus() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(
        dir.path(),
        "grid.json",
        r#"{
          "ball": {"type": "lp", "p": "inf"},
          "specs": [{"kind": "bisector", "x": [-1, 0], "y": [1, 0]}],
          "bbox": [[-3, -3], [3, 3]]
        }"#,
    );
    let out = conics(
        &[
            "grid",
            "--scene",
            &scene,
            "--resolution",
            "64",
            "--pgm",
            "region.pgm",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.path().join("region.pgm")).unwrap();
    assert!(text.starts_with("P2\n64 64\n255\n"));
    // The flat-norm bisector cones rasterize to a visible on-region.
    let zeros = text.split_whitespace().filter(|t| *t == "0").count();
    assert!(zeros > 64, "only {zeros} on-cells");
}
