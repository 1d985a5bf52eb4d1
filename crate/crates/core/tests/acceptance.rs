//! The acceptance suite: every criterion runs its full parameter grid with
//! exact arithmetic and zero tolerance. One summary line is printed per
//! criterion (visible with `cargo test -- --nocapture`, or on failure).

use sltensor::report::CheckStatus;
use sltensor::suite::{criterion_entries, run_entries};

const SEED: u64 = 20240501;

fn run_criterion(k: usize, title: &str, allow_undecided: bool) {
    let entries = criterion_entries(k);
    let count = entries.len();
    assert!(count > 0, "criterion {k} has an empty grid");
    let records = run_entries(entries, SEED).expect("valid configuration");
    let failures: Vec<String> = records
        .iter()
        .filter(|r| r.status == CheckStatus::Fail)
        .map(|r| {
            format!(
                "{} {:?}: {}",
                r.id,
                r.params,
                r.witness.as_deref().unwrap_or("")
            )
        })
        .collect();
    let undecided = records
        .iter()
        .filter(|r| r.status == CheckStatus::Inconclusive)
        .count();
    let ok = failures.is_empty() && (allow_undecided || undecided == 0);
    println!(
        "criterion {k:2} ({title}): {} ({count} checks, {undecided} undecided)",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(
        ok,
        "criterion {k} ({title}): {} failures, {undecided} undecided; first: {}",
        failures.len(),
        failures.first().map(|s| s.as_str()).unwrap_or("-")
    );
}

#[test]
fn criterion_01_presentation_validity() {
    run_criterion(1, "presentation validity", false);
}

#[test]
fn criterion_02_fourier_coherence() {
    run_criterion(2, "fourier coherence", false);
}

#[test]
fn criterion_03_one_dimensional_simplicity() {
    run_criterion(3, "one-dimensional simplicity branches", false);
}

#[test]
fn criterion_04_exterior_power_criterion() {
    run_criterion(4, "exterior-power criterion", false);
}

#[test]
fn criterion_05_classifier_against_window_search() {
    // undecided search outcomes are allowed; decided contradictions are not
    run_criterion(5, "classifier vs window search", true);
}

#[test]
fn criterion_06_derham_and_witten() {
    run_criterion(6, "differential identities", false);
}

#[test]
fn criterion_07_free_realization() {
    run_criterion(7, "free realization and intertwiner", false);
}

#[test]
fn criterion_08_rank_one_correspondence() {
    run_criterion(8, "rank-one correspondence", false);
}

#[test]
fn criterion_09_weighting() {
    run_criterion(9, "weighting functor", false);
}

#[test]
fn criterion_10_central_characters() {
    run_criterion(10, "central characters", false);
}

#[test]
fn criterion_11_coherent_families() {
    run_criterion(11, "coherent families", false);
}

#[test]
fn criterion_12_whittaker_vectors() {
    run_criterion(12, "whittaker vectors", false);
}
