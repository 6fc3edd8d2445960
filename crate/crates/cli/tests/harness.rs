//! Behavior of the `listsort-lab` binary itself: flag handling, exit codes,
//! output destinations, and the report formats as a user sees them.

use std::process::{Command, Output};

use listsort_lab::report::{parse_csv, CSV_HEADER};

fn bin() -> Command {
    let mut command = Command::new(env!("CARGO_BIN_EXE_listsort-lab"));
    command.env_remove("LISTSORT_LAB_SEED");
    command
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

const SMALL: &[&str] = &["--algo", "pbit", "--n", "64", "--repeats", "2"];

#[test]
fn small_run_succeeds_and_verifies() {
    let output = run(SMALL);
    assert!(output.status.success());
    let report = parse_csv(&stdout_of(&output)).unwrap();
    assert_eq!(report.rows.len(), 3);
    assert!(report.rows.iter().all(|r| r.verified));
}

#[test]
fn unknown_flags_and_bad_values_exit_2() {
    for args in [
        vec!["--frobnicate"],
        vec!["--algo", "bogosort", "--n", "4"],
        vec!["--k", "5", "--n", "4"],
        vec!["--order", "sideways", "--n", "4"],
        vec!["--repeats", "0", "--n", "4"],
    ] {
        let output = run(&args);
        assert_eq!(output.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn descending_with_comparison_baselines_is_a_usage_error() {
    let output = run(&["--algo", "pbit,quickersort", "--order", "desc", "--n", "8"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("quickersort"), "stderr: {stderr}");

    let output = run(&["--algo", "pbit", "--order", "desc", "--n", "8", "--repeats", "1"]);
    assert!(output.status.success());
}

#[test]
fn seed_env_var_applies_and_explicit_flag_wins() {
    let base = run(&["--algo", "pbit", "--n", "32", "--repeats", "1"]);
    let via_env = bin()
        .args(["--algo", "pbit", "--n", "32", "--repeats", "1"])
        .env("LISTSORT_LAB_SEED", "99")
        .output()
        .unwrap();
    let via_flag = run(&["--algo", "pbit", "--n", "32", "--repeats", "1", "--seed", "99"]);

    let seeds = |output: &Output| -> Vec<u64> {
        parse_csv(&stdout_of(output))
            .unwrap()
            .rows
            .iter()
            .map(|r| r.seed)
            .collect()
    };
    assert_ne!(seeds(&base), seeds(&via_env));
    assert_eq!(seeds(&via_env), seeds(&via_flag));

    let flag_overrides_env = bin()
        .args(["--algo", "pbit", "--n", "32", "--repeats", "1", "--seed", "42"])
        .env("LISTSORT_LAB_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(seeds(&base), seeds(&flag_overrides_env));
}

#[test]
fn no_verify_marks_rows_unverified() {
    let output = run(&["--algo", "mergesort", "--n", "16", "--repeats", "1", "--no-verify"]);
    assert!(output.status.success());
    let report = parse_csv(&stdout_of(&output)).unwrap();
    assert!(report.rows.iter().all(|r| !r.verified));

    let output = run(&[
        "--algo",
        "mergesort",
        "--n",
        "16",
        "--repeats",
        "1",
        "--no-verify",
        "--verify",
    ]);
    let report = parse_csv(&stdout_of(&output)).unwrap();
    assert!(report.rows.iter().all(|r| r.verified));
}

#[test]
fn paper_rand_caps_generated_keys() {
    let output = run(&[
        "--algo",
        "array_baseline",
        "--n",
        "200",
        "--repeats",
        "1",
        "--paper-rand",
        "--signed",
    ]);
    assert!(output.status.success());
    let report = parse_csv(&stdout_of(&output)).unwrap();
    assert!(report.rows.iter().all(|r| r.verified));

    // The emitted seeds replay the exact inputs the binary sorted, so the
    // value bound is checkable from outside.
    let kd = listsort_core::KeyDescriptor::new(listsort_lab::bench::KEY_BITS, true).unwrap();
    for row in &report.rows {
        if row.repeat == listsort_lab::report::Repeat::Mean {
            continue;
        }
        let mut arena = listsort_core::NodeArena::new();
        let list =
            listsort_lab::bench::generate(&mut arena, row.n, row.seed, (0, 0x7FFF), &kd).unwrap();
        assert!(arena
            .to_sequence(&list)
            .iter()
            .all(|&key| kd.decode(key) >= 0 && kd.decode(key) <= 0x7FFF));
    }
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let output = run(&[
        "--algo",
        "pbit",
        "--n",
        "16",
        "--repeats",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stdout_of(&output).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert!(parse_csv(&text).is_ok());
}

#[test]
fn unwritable_out_path_exits_1() {
    let output = run(&[
        "--algo",
        "pbit",
        "--n",
        "8",
        "--repeats",
        "1",
        "--out",
        "/nonexistent-dir/report.csv",
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn markdown_format_renders_the_table() {
    let output = run(&[
        "--algo",
        "pbit,mergesort",
        "--n",
        "8,64",
        "--repeats",
        "1",
        "--format",
        "markdown",
    ]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "| # | algorithm | n=8 | n=64 |");
    assert!(lines[2].starts_with("| 1 | pbit |"));
    assert!(lines[3].starts_with("| 2 | mergesort |"));
}

#[test]
fn plotdata_format_emits_one_block_per_algorithm() {
    let output = run(&[
        "--algo",
        "pbit,mergesort",
        "--n",
        "8,64",
        "--repeats",
        "1",
        "--format",
        "plotdata",
    ]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let blocks: Vec<&str> = text.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    assert!(blocks[0].starts_with("# pbit\n8 "));
    assert!(blocks[1].starts_with("# mergesort\n8 "));
    for block in blocks {
        assert_eq!(block.lines().count(), 3);
    }
}

#[test]
fn default_size_ladder_respects_max_n() {
    let output = run(&["--algo", "pbit", "--repeats", "1", "--max-n", "10000"]);
    assert!(output.status.success());
    let report = parse_csv(&stdout_of(&output)).unwrap();
    let mut sizes: Vec<u64> = report.rows.iter().map(|r| r.n).collect();
    sizes.dedup();
    assert_eq!(sizes, [1000, 10000]);
}

#[test]
fn signed_descending_pbit_round_trips() {
    let output = run(&[
        "--algo", "pbit", "--n", "128", "--repeats", "2", "--signed", "--order", "desc",
        "--k", "16",
    ]);
    assert!(output.status.success());
    let report = parse_csv(&stdout_of(&output)).unwrap();
    assert!(report.rows.iter().all(|r| r.verified && r.k == 16));
}
