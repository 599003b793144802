//! The check suites themselves: everything passes on a correct build, names
//! come back sorted, output is reproducible, unknown suites are rejected.

use swdual_core::error::Error;
use swdual_core::verify::run_suite;
use swdual_core::Config;

#[test]
fn all_suites_pass() {
    let cfg = Config::default();
    let results = run_suite("all", &cfg).unwrap();
    assert!(results.len() >= 20, "only {} checks", results.len());
    for r in &results {
        assert!(r.pass, "{} failed: {}", r.name, r.detail);
    }
    let names: Vec<&str> = results.iter().map(|r| r.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted, "canonical ordering");
}

#[test]
fn suites_are_disjoint_and_named_by_prefix() {
    let cfg = Config::default();
    let mut total = 0;
    for suite in ["units", "cohomology", "wu", "reps", "lattice", "order"] {
        let results = run_suite(suite, &cfg).unwrap();
        assert!(!results.is_empty(), "{suite} is empty");
        for r in &results {
            assert!(r.name.starts_with(&format!("{suite}.")), "{} in suite {suite}", r.name);
        }
        total += results.len();
    }
    let all = run_suite("all", &cfg).unwrap();
    assert_eq!(all.len(), total);
}

#[test]
fn runs_are_reproducible() {
    let cfg = Config::default();
    let a = run_suite("lattice", &cfg).unwrap();
    let b = run_suite("lattice", &cfg).unwrap();
    let strip = |v: &[swdual_core::verify::CheckResult]| -> Vec<(String, bool, String)> {
        v.iter().map(|r| (r.name.clone(), r.pass, r.detail.clone())).collect()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn unknown_suite_is_rejected() {
    let cfg = Config::default();
    assert!(matches!(run_suite("nonsense", &cfg), Err(Error::UnknownSuite(_))));
    assert!(matches!(run_suite("", &cfg), Err(Error::UnknownSuite(_))));
}

#[test]
fn config_precision_reaches_the_order_suite() {
    let cfg = Config { precision: 4, max_degree: 3 };
    let results = run_suite("order", &cfg).unwrap();
    for r in &results {
        assert!(r.pass, "{} failed at precision 4: {}", r.name, r.detail);
    }
    assert!(results.iter().any(|r| r.detail.contains("precision 4")));
    // a lowered degree cap still verifies the cohomology identities
    let results = run_suite("cohomology", &cfg).unwrap();
    for r in &results {
        assert!(r.pass, "{} failed at max degree 3: {}", r.name, r.detail);
    }
}
