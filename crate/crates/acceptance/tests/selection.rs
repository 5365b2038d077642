use gnrp_acceptance::{parse_selection, unexpected_outcomes, Check, CriterionReport, KNOWN_UNATTAINABLE, TITLES};

fn report(id: u8, checks: &[(&str, bool)], elapsed_s: f64) -> CriterionReport {
    CriterionReport {
        id,
        title: TITLES[id as usize - 1],
        checks: checks
            .iter()
            .map(|&(label, passed)| Check {
                label: label.into(),
                passed,
                detail: String::new(),
            })
            .collect(),
        transcript: Vec::new(),
        elapsed_s,
        limit_s: 10.0,
    }
}

#[test]
fn selection_parses_lists_and_ranges() {
    assert_eq!(parse_selection("").unwrap(), (1..=10).collect::<Vec<_>>());
    assert_eq!(parse_selection("1,3,5-7").unwrap(), vec![1, 3, 5, 6, 7]);
    assert_eq!(parse_selection(" 9 , 2 ").unwrap(), vec![2, 9]);
    for bad in ["0", "11", "3-1", "x", "1,,2"] {
        assert!(parse_selection(bad).is_err(), "{bad}");
    }
}

#[test]
fn listed_failures_are_expected_and_others_are_not() {
    let (id, label, _) = KNOWN_UNATTAINABLE[0];
    let expected = report(id, &[("warm up", true), (label, false)], 1.0);
    assert!(!expected.passed());
    assert!(unexpected_outcomes(&expected).is_empty());

    let surprising = report(id, &[(label, true)], 1.0);
    assert_eq!(unexpected_outcomes(&surprising).len(), 1);

    let plain = report(2, &[("band", false)], 1.0);
    assert_eq!(unexpected_outcomes(&plain).len(), 1);
}

#[test]
fn runtime_limit_counts_as_failure() {
    let slow = report(1, &[("ok", true)], 11.0);
    assert!(!slow.passed());
    assert_eq!(unexpected_outcomes(&slow).len(), 1);
    assert!(slow.render().starts_with("criterion  1 FAIL"));
}
