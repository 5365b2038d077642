//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! `GNRP_ACCEPTANCE_ONLY=3,5-7` restricts the run; `GNRP_WORKERS` sets the
//! pool size of the first pass (default 4), criterion 10 reruns with one.
//!
//! A criterion whose only failing checks are listed in
//! `KNOWN_UNATTAINABLE` stays FAIL in the report but does not fail the
//! target; any other failure does, and so does a listed check that passes.

use std::process::ExitCode;

use gnrp_acceptance::{parse_selection, run_suite, unexpected_outcomes, KNOWN_UNATTAINABLE};

fn main() -> ExitCode {
    let only = std::env::var("GNRP_ACCEPTANCE_ONLY").unwrap_or_default();
    let ids = match parse_selection(&only) {
        Ok(ids) => ids,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let workers = std::env::var("GNRP_WORKERS")
        .ok()
        .and_then(|w| w.parse().ok())
        .unwrap_or(4);
    let reports = match run_suite(&ids, workers, 1, |r| print!("{}", r.render())) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance suite aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("summary: {passed} of {} criteria passed", reports.len());
    for r in reports.iter().filter(|r| !r.passed()) {
        for &(id, label, why) in KNOWN_UNATTAINABLE.iter().filter(|k| k.0 == r.id) {
            println!("criterion {id} expected failure `{label}`: {why}");
        }
    }
    let unexpected: Vec<String> = reports.iter().flat_map(unexpected_outcomes).collect();
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        ExitCode::FAILURE
    }
}
