//! Black-box tests of the `tiledim` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn tiledim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiledim"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .unwrap()
}

fn tiledim_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tiledim"))
        .args(args)
        .current_dir(fixtures())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_accepts_fixture() {
    let out = tiledim(&["validate", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["valid"], true);
}

#[test]
fn validate_rejects_overlap_with_exit_1() {
    let bad = r#"{"d":1,"boxes":[[["-1","1"]],[["0","1"]]]}"#;
    let out = tiledim_stdin(&["validate"], bad);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn validate_rejects_malformed_with_exit_2() {
    let out = tiledim_stdin(&["validate"], "not json");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = tiledim(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn proper_reports_pinwheel_proper() {
    let out = tiledim(&["proper", "--method", "all", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["proper"], true);
}

#[test]
fn proper_reports_grid_improper_with_witness() {
    for method in ["depth", "pairwise", "families"] {
        let out = tiledim(&["proper", "--method", method, "grid2x2.json"]);
        assert_eq!(out.status.code(), Some(1), "method {method}");
        let v = stdout_json(&out);
        assert_eq!(v["proper"], false);
        assert!(v[method]["witness"].is_object());
    }
}

#[test]
fn slice_carries_source_ids() {
    let out = tiledim(&["slice", "--axis", "2", "--at", "-3/4", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    // only B1 and B2 cross y = -3/4
    assert_eq!(v["source"], serde_json::json!([0, 1]));
    assert_eq!(v["tiling"]["d"], 1);
}

#[test]
fn slice_rejects_non_generic_level() {
    let out = tiledim(&["slice", "--axis", "1", "--at", "1/2", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cut_reproduces_the_documented_example() {
    let t = r#"{"d":2,"boxes":[[["-1","0"],["-1","1"]],[["0","1"],["-1","1"]]]}"#;
    let out = tiledim_stdin(&["cut", "--axis", "1", "--at", "1/2", "--sign", "minus"], t);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        v["tiling"]["boxes"],
        serde_json::json!([[["-1", "0"], ["-1", "1"]], [["0", "1"], ["-1", "1"]]])
    );
}

#[test]
fn separations_of_pinwheel() {
    let out = tiledim(&["separations", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["separations"].as_array().unwrap().len(), 8);
    assert!(v["separations"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["is_box"] == true));
    assert_eq!(v["coplanar_pairs"], serde_json::json!([]));
}

#[test]
fn perturb_removes_coplanarity() {
    let out = tiledim(&["perturb", "three_row_coplanar.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["epsilons"].as_array().unwrap().len(), 1);
    let t = serde_json::to_string(&v["tiling"]).unwrap();
    let out2 = tiledim_stdin(&["separations"], &t);
    assert_eq!(stdout_json(&out2)["coplanar_pairs"], serde_json::json!([]));
}

#[test]
fn perturb_rejects_improper_input() {
    let out = tiledim(&["perturb", "grid2x2.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_is_dot_with_one_node_per_box() {
    let out = tiledim(&["graph", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph T {"));
    assert_eq!(dot.matches("label=").count(), 5);
    assert!(dot.contains("4 -> 0;"));
}

#[test]
fn realizer_and_verify_round_trip() {
    let out = tiledim(&["realizer", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["orders"].as_array().unwrap().len(), 3);

    let out = tiledim(&[
        "verify",
        "--complex",
        "pinwheel_complex.json",
        "--realizer",
        "pinwheel_realizer.json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["ok"], true);
}

#[test]
fn verify_fails_bad_realizer_with_exit_1() {
    let dir = std::env::temp_dir().join("tiledim-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad_realizer.json");
    std::fs::write(&bad, r#"{"orders":[[0,1,2,3,4]]}"#).unwrap();
    let out = tiledim(&[
        "verify",
        "--complex",
        "pinwheel_complex.json",
        "--realizer",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["ok"], false);
}

#[test]
fn complex_of_pinwheel_is_the_four_wheel() {
    let out = tiledim(&["complex", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        v["maximal_faces"],
        serde_json::json!([[0, 1, 4], [0, 3, 4], [1, 2, 4], [2, 3, 4]])
    );
}

#[test]
fn dmdim_pinwheel_is_3() {
    let out = tiledim(&["dmdim", "--kmax", "3", "pinwheel_complex.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "3");
}

#[test]
fn dmdim_reports_exceeding_kmax_with_exit_1() {
    let out = tiledim(&["dmdim", "--kmax", "2", "pinwheel_complex.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "> 2");
}

#[test]
fn generate_requires_a_seed() {
    let out = tiledim(&["generate", "--d", "2", "--boxes", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_general_position_output_has_no_coplanar_pairs() {
    let out = tiledim(&[
        "generate",
        "--d",
        "2",
        "--boxes",
        "12",
        "--seed",
        "9",
        "--general-position",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = String::from_utf8(out.stdout).unwrap();
    let seps = tiledim_stdin(&["separations"], &t);
    assert_eq!(stdout_json(&seps)["coplanar_pairs"], serde_json::json!([]));
}

#[test]
fn collapse_pinwheel_removes_the_corner_box() {
    let out = tiledim(&["collapse", "pinwheel.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["removed"], 0);
    assert_eq!(v["partner"], 4);
    assert_eq!(v["axis"], 2);
    assert_eq!(v["mapping"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn render_svg_rejects_3d_input() {
    let out = tiledim(&["render-svg", "fig1_left_like.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_svg_single_box_covers_the_viewbox() {
    let out = tiledim(&["render-svg", "single2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(svg.matches("<rect").count(), 1);
    assert!(svg.contains("width=\"1000.000\" height=\"1000.000\""));
}

#[test]
fn render_svg_is_byte_deterministic() {
    let a = tiledim(&["render-svg", "--separations", "pinwheel.json"]);
    let b = tiledim(&["render-svg", "--separations", "pinwheel.json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        String::from_utf8(a.stdout).unwrap().matches("<rect").count(),
        5
    );
}
