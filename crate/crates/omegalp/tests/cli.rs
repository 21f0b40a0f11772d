//! End-to-end runs of the `omegalp` binary against fixture files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_omegalp"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("failed to launch omegalp")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn solve_williams_prints_value_and_nine_vertices() {
    let out = run(&["solve", fixture("williams.json").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("lambda_bar = 3/10\n"));
    assert!(text.contains("optimal vertices (9):"));
    assert!(text.contains("[[6,4]_2,[1,4]_2]_3"));
    assert!(text.contains("rho_1: [1]_2 -> 1, [2]_2 -> 3, [3]_2 -> 5, [4]_2 -> 6, [5]_2 -> 7"));
}

#[test]
fn game_with_oracle_check_agrees() {
    let out = run(&[
        "game",
        fixture("williams_game.txt").to_str().unwrap(),
        "--oracle-check",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("value of the game = 10/3"));
    assert!(text.contains("optimal strategies of the column player (9):"));
    assert!(text.contains("optimum: 3/10; vertices: 27; optimal vertices: 8"));
    assert!(!text.contains(" NO\n"));
}

#[test]
fn vertices_lists_all_points() {
    let out = run(&["vertices", fixture("williams.json").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("all points (35):"));
}

#[test]
fn all_zero_rhs_exits_one_with_message() {
    let out = run(&["solve", fixture("all_zero_rhs.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("every right-hand side is zero"));
}

#[test]
fn element_cap_exits_three() {
    let out = run(&[
        "solve",
        fixture("williams.json").to_str().unwrap(),
        "--max-elements",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("exceeding the cap of 5"));
}

#[test]
fn env_var_sets_the_cap() {
    let out = Command::new(binary())
        .args(["solve", fixture("williams.json").to_str().unwrap()])
        .env("OMEGA_MAX_ELEMENTS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_report_round_trips() {
    let out = run(&[
        "solve",
        fixture("williams.json").to_str().unwrap(),
        "--json",
        "--all-vertices",
        "--oracle-check",
        "--trace-levels",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let parsed: omegalp::report::SolveOutput = serde_json::from_str(&text).unwrap();
    assert_eq!(omegalp::report::to_json(&parsed), text);
    assert_eq!(parsed.report.lambda_bar, omegalp::Rational::ratio(3, 10));
    assert_eq!(parsed.report.all_vertices.as_ref().unwrap().len(), 35);
    assert_eq!(parsed.trace.as_ref().unwrap().len(), 3);
}

#[test]
fn identical_inputs_give_byte_identical_output() {
    let game_file = fixture("williams_game.txt");
    let args = ["game", game_file.to_str().unwrap(), "--json", "--oracle-check"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_accepts_and_rejects() {
    let good = run(&[
        "verify",
        fixture("williams_game.txt").to_str().unwrap(),
        fixture("uniform_strategy.txt").to_str().unwrap(),
    ]);
    assert!(good.status.success(), "{}", stderr(&good));
    let text = stdout(&good);
    assert!(text.contains("row values: (10/3, 10/3, 10/3)"));
    assert!(text.contains("optimal: yes"));

    let bad = run(&[
        "verify",
        fixture("williams_game.txt").to_str().unwrap(),
        fixture("pure_strategy.json").to_str().unwrap(),
    ]);
    assert!(bad.status.success());
    assert!(stdout(&bad).contains("optimal: no"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run(&[
        "solve",
        fixture("williams.json").to_str().unwrap(),
        "--json",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.contains("\"lambda_bar\": \"3/10\""));
}

#[test]
fn decimal_flag_renders_approximations() {
    let out = run(&[
        "solve",
        fixture("williams.json").to_str().unwrap(),
        "--decimal",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("lambda_bar = 0.300000\n"));
}

#[test]
fn game_shift_flag_changes_the_scale() {
    let out = run(&[
        "game",
        fixture("williams_game.txt").to_str().unwrap(),
        "--shift",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    // The shift moves the internal LP scale but the reported game value
    // stays on the payoff scale.
    assert!(text.contains("value of the reduced LP (lambda_bar) = 3/13"));
    assert!(text.contains("value of the game = 10/3"));
}
