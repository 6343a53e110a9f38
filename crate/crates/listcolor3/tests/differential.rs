//! Solver-versus-oracle sweep over a seeded corpus, small enough to run on
//! every test invocation; the acceptance suite runs the full-size version.

use listcolor3::{differential_run, Decision, DiffConfig};

#[test]
fn solver_matches_brute_force_on_small_instances() {
    let report = differential_run(&DiffConfig::new(250, (4, 11), 0xC0FFEE));
    assert_eq!(report.runs.len(), 250);
    for run in &report.runs {
        assert_eq!(
            run.agree,
            Some(true),
            "decision mismatch for spec {:?} (solver said {:?})",
            run.spec,
            run.decision
        );
        assert!(run.witness_ok, "witness failed verification: {:?}", run.spec);
        assert_ne!(run.decision, Decision::Aborted);
        assert!(
            run.stats.leaves <= 2 * run.stats.nodes + 1,
            "leaf/node shape broken: {:?}",
            run.stats
        );
    }
}

#[test]
fn violation_free_runs_respect_the_leaf_bound() {
    let report = differential_run(&DiffConfig::new(250, (6, 12), 0xBEEF));
    let checked = report.violation_free_count();
    assert!(checked > 50, "too few violation-free runs to be meaningful: {checked}");
    if let Some(max) = report.max_bound_ratio() {
        assert!(
            max <= 1.0,
            "leaf bound exceeded: max leaves / base^mu = {max}"
        );
    }
}
