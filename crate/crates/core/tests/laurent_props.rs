use deriv_closure::deduction::Verdict;
use deriv_closure::exactnum::{int, rat, BigRational, OpenInterval};
use deriv_closure::laurent::{
    classify_polynomial, classify_pq, find_pivot_indices, linearly_dependent, nonvanishing_on, wronskian, CaseTag,
    LaurentPoly,
};
use num::traits::Zero;
use proptest::prelude::*;

fn laurent(min_k: i64, max_k: i64, max_len: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((min_k..=max_k, -9i64..=9), 0..=max_len)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(k, c)| (k, int(c)))))
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent(-4, 4, 6).prop_filter("nonzero", |p| !p.is_zero())
}

fn nonzero_rat() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn wronskian_detects_dependence(p in nonzero_laurent(), q in nonzero_laurent()) {
        prop_assert_eq!(wronskian(&p, &q).is_zero(), linearly_dependent(&p, &q));
    }

    #[test]
    fn dependent_by_construction(p in nonzero_laurent(), a in nonzero_rat()) {
        prop_assert!(linearly_dependent(&p, &p.scale(&a)));
        prop_assert!(wronskian(&p, &p.scale(&a)).is_zero());
    }

    #[test]
    fn case_three_is_affine_invariant(
        p in laurent(-3, 3, 5), q in laurent(-3, 3, 5),
        a in nonzero_rat(), b in nonzero_rat(), c in -5i64..=5, e in -5i64..=5,
    ) {
        let base = classify_pq(&p, &q);
        prop_assume!(base.tag == CaseTag::CaseIII);
        let p2 = p.scale(&a).add(&LaurentPoly::constant(int(c)));
        let q2 = q.scale(&b).add(&LaurentPoly::constant(int(e)));
        let moved = classify_pq(&p2, &q2);
        prop_assert_eq!(moved.tag, CaseTag::CaseIII);
        prop_assert_eq!(moved.verdict, Verdict::StandardDerivation);
        prop_assert_eq!(moved.pivot.unwrap().r, base.pivot.unwrap().r);
    }

    #[test]
    fn pivot_satisfies_kl(p in laurent(-3, 3, 5), q in laurent(-3, 3, 5)) {
        let (p0, q0) = (p.without_constant(), q.without_constant());
        prop_assume!(!linearly_dependent(&p0, &q0));
        let (k0, ell) = find_pivot_indices(&p, &q).unwrap();
        let (pc, qc) = (|k| p.coeff(k), |k| q.coeff(k));
        prop_assert!(pc(k0) * qc(ell) != pc(ell) * qc(k0));
        for i in (-3..ell).filter(|i| *i != 0) {
            for j in (-3..ell).filter(|j| *j != 0) {
                prop_assert_eq!(pc(i) * qc(j), pc(j) * qc(i));
            }
        }
    }

    #[test]
    fn polynomial_corollary_agrees(p in laurent(0, 6, 7).prop_filter("nonzero", |p| !p.is_zero())) {
        let v = classify_polynomial(&p, &OpenInterval::real_line()).unwrap();
        prop_assert_eq!(v, classify_pq(&p, &LaurentPoly::u()).verdict);
    }

    #[test]
    fn sturm_agrees_with_sign_changes(
        p in laurent(0, 6, 7).prop_filter("nonzero", |p| !p.is_zero()),
        lo in -40i64..40, w in 1i64..40,
    ) {
        let (a, b) = (rat(lo, 8), rat(lo + w, 8));
        let iv = OpenInterval::rational(a.clone(), b.clone()).unwrap();
        let exact = nonvanishing_on(&p, &iv).unwrap();
        let step = (&b - &a) / int(256);
        let mut x = &a + &step;
        let mut prev = p.eval(&x).unwrap();
        let mut hit = false;
        while x < b {
            let v = p.eval(&x).unwrap();
            if v.is_zero() || (v.clone() * prev.clone()) < BigRational::zero() {
                hit = true;
            }
            prev = v;
            x += &step;
        }
        if hit {
            prop_assert!(!exact);
        }
    }
}

#[test]
fn documented_examples() {
    let l = LaurentPoly::from_ints;
    assert_eq!(wronskian(&l(&[(1, 1)]), &l(&[(2, 1)])), l(&[(2, -1)]));
    assert!(wronskian(&l(&[(1, 1), (0, 1)]), &l(&[(1, 2), (0, 2)])).is_zero());
    assert_eq!(find_pivot_indices(&l(&[(1, 1), (3, 1)]), &l(&[(1, 1), (3, -1)])), Ok((1, 3)));
    assert_eq!(find_pivot_indices(&l(&[(-1, 1), (1, 1)]), &l(&[(-1, 2), (1, 1)])), Ok((-1, 1)));
    let c = classify_pq(&l(&[(2, 1)]), &l(&[(1, 1)]));
    assert_eq!((c.tag, c.verdict), (CaseTag::CaseIII, Verdict::StandardDerivation));
    assert_eq!(classify_pq(&l(&[(1, 1), (0, 1)]), &l(&[(1, 2), (0, 5)])).tag, CaseTag::CaseII);
    assert_eq!(classify_pq(&l(&[(-1, 3)]), &l(&[(-1, 1)])).verdict, Verdict::Unconstrained);
    let i12 = OpenInterval::rational(int(1), int(2)).unwrap();
    assert!(!nonvanishing_on(&l(&[(2, 1), (0, -2)]), &i12).unwrap());
}
