//! Suites on types outside the acceptance run.

use wonderful::oracle::{run_suite, SuiteConfig};
use wonderful::{CartanDatum, CoxeterSystem};

fn run(suite: &str, label: &str) {
    let sys = CoxeterSystem::build(CartanDatum::from_label(label).unwrap()).unwrap();
    let r = run_suite(suite, &SuiteConfig::new(sys)).unwrap();
    let shown: Vec<String> = r.failures.iter().take(10).map(|f| format!("{}: {}", f.check, f.witness)).collect();
    assert!(r.passed(), "{suite} on {label}: {} failures\n{}", r.failure_count, shown.join("\n"));
    assert!(r.cases > 0);
}

#[test]
fn g2() {
    for s in ["monoid", "appendix", "criteria", "closure", "partitions", "dl"] {
        run(s, "G2");
    }
}

#[test]
fn a3() {
    for s in ["monoid", "appendix", "criteria", "closure", "dl"] {
        run(s, "A3");
    }
}

#[test]
fn a1xa1() {
    for s in ["appendix", "criteria", "closure", "components", "dl"] {
        run(s, "A1xA1");
    }
}

#[test]
fn unknown_suite() {
    let sys = CoxeterSystem::build(CartanDatum::from_label("A1").unwrap()).unwrap();
    assert!(run_suite("nope", &SuiteConfig::new(sys)).is_err());
}
