//! End-to-end checks of the command-line interface: exit codes, flag
//! parsing, and byte-deterministic reports.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sltensor"))
}

#[test]
fn passing_check_exits_zero() {
    let out = bin()
        .args(["relations", "--n", "2", "--V", "wedge:1", "--S", "all"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass"));
}

#[test]
fn failing_check_exits_nonzero() {
    // the candidate vector violates the annihilation precondition
    let out = bin()
        .args([
            "whittaker", "--n", "2", "--b", "2,3,1", "--S", "2", "--V", "wedge:1", "--l",
            "2",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_flags_exit_two() {
    let out = bin()
        .args(["relations", "--n", "2", "--V", "nope:3"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["frobnicate"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mismatched_weight_lengths_are_rejected() {
    let out = bin()
        .args(["classify", "--n", "3", "--lam", "1,0"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["casimir", "--n", "2", "--V", "va:1", "--lam", "1"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["weighting", "--n", "2", "--b", "1", "--V", "va:1/2", "--S", "1"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn set_parsing_variants() {
    for s in ["", "1,2", "all"] {
        let out = bin()
            .args(["relations", "--n", "2", "--V", "va:1/3", "--S", s])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "S = {s:?}");
    }
    let out = bin()
        .args(["relations", "--n", "2", "--V", "va:1/3", "--S", "7"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical_for_fixed_seed() {
    let run = || {
        let out = bin()
            .args([
                "weighting", "--n", "2", "--b", "1,2", "--V", "va:1/2", "--S", "1",
                "--samples", "3", "--seed", "99", "--format", "json",
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn polynomial_flag_round_trip() {
    let out = bin()
        .args([
            "derham", "--n", "2", "--S", "2", "--g", "t1*t2 - 1/2*t1", "--box", "2",
            "--samples", "5", "--format", "json",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"status\":\"pass\""));
}

#[test]
fn suite_criterion_subset_runs() {
    let out = bin()
        .args(["suite", "--criterion", "12", "--format", "json"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("whittaker"));
    assert!(!text.contains("\"status\":\"fail\""));
}
