// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

use qmslab::verify::{run_suite, Suite};

fn assert_passes(suite: Suite, seed: u64) {
    let report = run_suite(suite, seed);
    let failures: Vec<_> = report.failures().collect();
    assert!(failures.is_empty(), "{suite} seed {seed}: {failures:#?}");
    assert!(!report.checks.is_empty());
}

#[test]
fn transference_suite() {
    assert_passes(Suite::Transference, 0);
}

#[test]
fn entropy_suite() {
    assert_passes(Suite::Entropy, 0);
}

#[test]
fn capacities_suite() {
    assert_passes(Suite::Capacities, 0);
}

#[test]
fn montecarlo_suite() {
    assert_passes(Suite::MonteCarlo, 0);
}

#[test]
fn seeds_change_slack_not_outcome() {
    let a = run_suite(Suite::Entropy, 1);
    let b = run_suite(Suite::Entropy, 2);
    assert_eq!(a.passed, b.passed);
    let names =
        |r: &qmslab::verify::VerifyReport| r.checks.iter().map(|c| (c.name.clone(), c.passed)).collect::<Vec<_>>();
    assert_eq!(names(&a), names(&b));
    assert!(a.checks.iter().zip(&b.checks).any(|(x, y)| x.slack != y.slack));
}

#[test]
fn capacity_suite_names_each_theorem_once() {
    let report = run_suite(Suite::Capacities, 0);
    let mut names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    let total = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), total);
}
