use deriv_closure::deduction::{
    gamma_delta, maksa_verdict, replay, run_deduction, Config, Domain, Fact, Func, Iv, Verdict,
};
use deriv_closure::elementary::Law;
use deriv_closure::exactnum::{int, parse_rational, rat, BigRational};
use deriv_closure::laurent::LaurentPoly;
use proptest::prelude::*;

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

const GOOD: [(Law, &str, &str); 9] = [
    (Law::Exp, "0", "1"),
    (Law::Sinh, "-1/2", "1/3"),
    (Law::Cosh, "1", "3"),
    (Law::Tanh, "-1", "1"),
    (Law::Coth, "1", "3"),
    (Law::Sin, "-1", "1"),
    (Law::Cos, "1", "7/2"),
    (Law::Tan, "-1", "1"),
    (Law::Cot, "1/2", "3"),
];

const BAD: [(Law, &str, &str, &str); 9] = [
    (Law::Exp, "1", "2", "2*alpha<beta"),
    (Law::Sinh, "1", "2", "alpha<0"),
    (Law::Cosh, "-1", "1", "0<2*alpha"),
    (Law::Tanh, "-2", "-1", "0<beta"),
    (Law::Coth, "1", "3/2", "2*alpha<beta"),
    (Law::Sin, "1/2", "1", "alpha<0"),
    (Law::Cos, "1", "2", "pi<beta"),
    (Law::Tan, "1", "2", "2*alpha<beta"),
    (Law::Cot, "1", "4", "beta<pi"),
];

#[test]
fn every_row_succeeds_and_replays() {
    for (law, a, b) in GOOD {
        let out = maksa_verdict(law, &q(a), &q(b), &Config::default()).unwrap();
        assert_eq!(out.verdict, Verdict::StandardDerivation, "{law} on ]{a}, {b}[");
        assert!(out.failed.is_none());
        assert_eq!(replay(&out.trace).unwrap(), Verdict::StandardDerivation);
        assert_eq!(out.trace.nodes[0].rule, "hypothesis");
        assert_eq!(out.trace.nodes[1].rule, "CorAdd");
    }
}

#[test]
fn every_row_reports_the_failed_inequality() {
    for (law, a, b, failed) in BAD {
        let out = maksa_verdict(law, &q(a), &q(b), &Config::default()).unwrap();
        assert!(matches!(out.verdict, Verdict::Inapplicable(_)), "{law}");
        assert_eq!(out.failed.as_deref(), Some(failed), "{law} on ]{a}, {b}[");
        assert!(out.trace.nodes.is_empty());
    }
}

#[test]
fn enlarging_the_interval_keeps_the_verdict() {
    let cases = [
        (Law::Exp, ("0", "1"), ("-1/4", "3/2")),
        (Law::Sinh, ("-1/2", "1/3"), ("-2", "5")),
        (Law::Tanh, ("-1", "1"), ("-3", "2")),
        (Law::Cosh, ("1", "3"), ("1", "7")),
        (Law::Tan, ("-1", "1"), ("-3/2", "3/2")),
    ];
    for (law, (a, b), (a2, b2)) in cases {
        for (x, y) in [(a, b), (a2, b2)] {
            let out = maksa_verdict(law, &q(x), &q(y), &Config::default()).unwrap();
            assert_eq!(out.verdict, Verdict::StandardDerivation, "{law} on ]{x}, {y}[");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn gamma_delta_interval_containment(a in -500i64..500, da in 1i64..50, w in 1i64..500, dw in 1i64..50) {
        let alpha = rat(a, da);
        let floor = if alpha > int(0) { int(2) * &alpha } else { &alpha / int(2) };
        let beta = floor + rat(w, dw);
        let (g, d) = gamma_delta(&alpha, &beta).unwrap();
        prop_assert!(int(2) * &g >= alpha);
        prop_assert!(int(2) * &d <= beta);
        prop_assert!(g < d);
    }
}

fn interval(a: i64, b: i64) -> Domain {
    Domain::interval(Iv::rational(int(a), int(b)).unwrap())
}

#[test]
fn driver_examples() {
    let cfg = Config::default();
    let sq = Fact::new(Func::Power(int(2)), interval(5, 6)).unwrap();
    let d = run_deduction(std::slice::from_ref(&sq), &Verdict::StandardDerivation, &cfg).unwrap();
    assert_eq!(d.verdict, Verdict::StandardDerivation);
    assert!(d.goal_met);

    let lin = Fact::new(Func::Laurent(LaurentPoly::from_ints(&[(1, 1), (0, 1)])), interval(1, 2)).unwrap();
    let d = run_deduction(std::slice::from_ref(&lin), &Verdict::StandardDerivation, &cfg).unwrap();
    assert_eq!(d.verdict, Verdict::D1Zero);
    assert_eq!(replay(&d.trace).unwrap(), Verdict::D1Zero);

    assert_eq!(run_deduction(&[], &Verdict::D1Zero, &cfg).unwrap().verdict, Verdict::Unconstrained);

    // more hypotheses never weaken the result
    let both = run_deduction(&[lin, sq], &Verdict::StandardDerivation, &cfg).unwrap();
    assert_eq!(both.verdict, Verdict::StandardDerivation);
}

#[test]
fn inverse_then_addition_law() {
    // ln on ]1, 2[ inverts to exp on ]0, ln 2[, which then satisfies its row
    let h = Fact::new(Func::Elem(deriv_closure::elementary::Elementary::Ln), interval(1, 2)).unwrap();
    let d = run_deduction(&[h], &Verdict::StandardDerivation, &Config::default()).unwrap();
    assert!(d.trace.nodes.iter().any(|n| n.rule == "Inv-iii"));
    assert_eq!(replay(&d.trace).unwrap(), d.verdict);
}

#[test]
fn support_keeps_only_needed_nodes() {
    let h = Fact::new(Func::Power(int(3)), interval(1, 2)).unwrap();
    let junk = Fact::new(Func::Laurent(LaurentPoly::from_ints(&[(1, 3)])), interval(1, 2)).unwrap();
    let d = run_deduction(&[junk, h], &Verdict::StandardDerivation, &Config::default()).unwrap();
    let s = d.trace.support();
    assert!(s.nodes.len() < d.trace.nodes.len());
    assert_eq!(replay(&s).unwrap(), Verdict::StandardDerivation);
}
