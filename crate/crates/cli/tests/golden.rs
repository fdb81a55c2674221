mod common;

use serde_json::Value;

#[test]
fn outputs_match_golden_files() {
    let bad = common::golden_mismatches();
    assert!(bad.is_empty(), "golden mismatches: {bad:?}");
}

#[test]
fn every_subcommand_is_covered() {
    let names = common::fixture_names();
    for prefix in ["classify_pq", "classify_poly", "dense_point", "deduce", "maksa", "identities"] {
        assert!(names.iter().filter(|n| n.starts_with(prefix)).count() >= 3, "{prefix}");
    }
}

#[test]
fn output_round_trips_and_repeats() {
    for name in ["maksa_cos_good", "deduce_power_two", "dense_point_v"] {
        let a = common::run_fixture(name);
        assert_eq!(a, common::run_fixture(name));
        let body = a.split_once('\n').unwrap().1;
        let v: Value = serde_json::from_str(body).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap() + "\n", body);
    }
}

#[test]
fn exit_codes() {
    let code = |name: &str| common::run_fixture(name).lines().next().unwrap().to_string();
    assert_eq!(code("maksa_exp_good"), "exit=0");
    assert_eq!(code("maksa_cos_bad"), "exit=2");
    assert_eq!(code("maksa_unknown_fn"), "exit=1");
    assert_eq!(code("parse_error"), "exit=1");
    assert_eq!(code("deduce_empty"), "exit=2");
}
