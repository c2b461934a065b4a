use super::*;

#[test]
fn suite_names_round_trip() {
    for s in Suite::EACH.into_iter().chain([Suite::All]) {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nope".parse::<Suite>().is_err());
}

#[test]
fn infeasible_bounds_are_refused() {
    assert!(run_suite(&SuiteConfig::new(Suite::Dimensions, 6)).is_err());
    assert!(run_suite(&SuiteConfig::new(Suite::Minors, 5)).is_err());
    assert!(run_suite(&SuiteConfig::new(Suite::Networks, 4)).is_err());
    assert!(run_suite(&SuiteConfig::new(Suite::Tnn, 0)).is_err());
}

#[test]
fn all_suites_pass_on_two_strands() {
    let mut cfg = SuiteConfig::new(Suite::All, 2);
    cfg.samples = 5;
    cfg.workers = 3;
    let rep = run_suite(&cfg).unwrap();
    let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(tally(&rep).len(), Suite::EACH.len());
}

#[test]
fn three_strand_suites_pass() {
    for s in [Suite::Relations, Suite::Dimensions, Suite::Minors, Suite::Networks] {
        let mut cfg = SuiteConfig::new(s, 3);
        cfg.samples = 4;
        let rep = run_suite(&cfg).unwrap();
        assert!(rep.passed, "{}", serde_json::to_string_pretty(&rep).unwrap());
    }
}
