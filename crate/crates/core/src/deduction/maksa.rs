//! The nine-row dispatcher for catalog functions with an addition theorem:
//! row hypotheses, the `γ/δ` construction, and the case-specific steps.

use std::cmp::Ordering;

use num::traits::{One, Signed, Zero};

use super::domain::{Domain, Endpoint, Iv};
use super::engine::{run_deduction, Config, ProofTrace, Store};
use super::func::{Fact, Func};
use super::rules::Step;
use super::{DeductionError, Verdict};
use crate::conic::{point_in, ConicSet};
use crate::elementary::Law;
use crate::exactnum::{format_rational, int, rat, BigRational};
use crate::symreal::{scan_rationals, simplest_rational_between, SymReal};

type Res<T> = Result<T, DeductionError>;

/// `a·α + b·β + c·π`.
#[derive(Clone, Copy)]
struct Lin(i64, i64, i64);

struct Atom {
    label: &'static str,
    lhs: Lin,
    rhs: Lin,
}

const fn atom(label: &'static str, lhs: Lin, rhs: Lin) -> Atom {
    Atom { label, lhs, rhs }
}

const ZERO: Lin = Lin(0, 0, 0);
const A: Lin = Lin(1, 0, 0);
const A2: Lin = Lin(2, 0, 0);
const B: Lin = Lin(0, 1, 0);
const B2: Lin = Lin(0, 2, 0);
const PI: Lin = Lin(0, 0, 1);
const NPI: Lin = Lin(0, 0, -1);

fn rows(law: Law) -> Vec<Vec<Atom>> {
    let sign_change = || vec![vec![atom("alpha<0", A, ZERO), atom("0<beta", ZERO, B)]];
    let two_sided = || {
        vec![
            vec![atom("0<2*alpha", ZERO, A2), atom("2*alpha<beta", A2, B)],
            vec![atom("alpha<2*beta", A, B2), atom("2*beta<0", B2, ZERO)],
        ]
    };
    match law {
        Law::Exp => vec![vec![atom("2*alpha<beta", A2, B), atom("alpha<2*beta", A, B2)]],
        Law::Sinh | Law::Tanh | Law::Sin => sign_change(),
        Law::Cosh | Law::Coth => two_sided(),
        Law::Cos => vec![
            vec![
                atom("0<2*alpha", ZERO, A2),
                atom("2*alpha<pi", A2, PI),
                atom("pi<beta", PI, B),
            ],
            vec![
                atom("alpha<-pi", A, NPI),
                atom("-pi<2*beta", NPI, B2),
                atom("2*beta<0", B2, ZERO),
            ],
        ],
        Law::Tan => vec![vec![
            atom("-pi<2*alpha", NPI, A2),
            atom("2*alpha<beta", A2, B),
            atom("alpha<2*beta", A, B2),
            atom("2*beta<pi", B2, PI),
        ]],
        Law::Cot => vec![
            vec![
                atom("0<2*alpha", ZERO, A2),
                atom("2*alpha<beta", A2, B),
                atom("beta<pi", B, PI),
            ],
            vec![
                atom("-pi<alpha", NPI, A),
                atom("alpha<2*beta", A, B2),
                atom("2*beta<0", B2, ZERO),
            ],
        ],
    }
}

fn scale(e: &Endpoint, k: i64) -> Endpoint {
    match (e, k.signum()) {
        (_, 0) => Endpoint::int(0),
        (Endpoint::At(x), _) => Endpoint::At(x.scale(&int(k))),
        (inf, 1) => inf.clone(),
        (inf, _) => inf.neg(),
    }
}

fn eval(l: Lin, alpha: &Endpoint, beta: &Endpoint) -> Endpoint {
    let pi = Endpoint::At(SymReal::pi_times(int(l.2)));
    let terms = [scale(alpha, l.0), scale(beta, l.1), if l.2 == 0 { Endpoint::int(0) } else { pi }];
    terms
        .iter()
        .skip(1)
        .fold(terms[0].clone(), |acc, t| acc.add(t).unwrap_or(Endpoint::int(0)))
}

/// Checks the row hypothesis; on failure returns the first violated
/// inequality of the alternative with the most satisfied inequalities.
pub fn row_hypothesis(law: Law, alpha: &Endpoint, beta: &Endpoint) -> Res<Result<(), String>> {
    let mut best: Option<(usize, &'static str)> = None;
    for alt in rows(law) {
        let mut held = 0;
        let mut first_failed = None;
        for a in &alt {
            let lhs = eval(a.lhs, alpha, beta);
            let rhs = eval(a.rhs, alpha, beta);
            if lhs.cmp(&rhs)? == Ordering::Less {
                held += 1;
            } else if first_failed.is_none() {
                first_failed = Some(a.label);
            }
        }
        match first_failed {
            None => return Ok(Ok(())),
            Some(f) => {
                if best.is_none_or(|(h, _)| held > h) {
                    best = Some((held, f));
                }
            }
        }
    }
    Ok(Err(best.map(|b| b.1).unwrap_or("alpha<beta").to_string()))
}

/// `γ = ½·max(α, 2α)`, `δ = ½·min(β, 2β)`, so that `]2γ, 2δ[ ⊆ ]α, β[`.
pub fn gamma_delta(alpha: &BigRational, beta: &BigRational) -> Res<(BigRational, BigRational)> {
    let two = int(2);
    let fail = |f: &str| DeductionError::HypothesisFailed {
        row: "gamma-delta".into(),
        failed: f.into(),
    };
    if &two * alpha >= *beta {
        return Err(fail("2*alpha<beta"));
    }
    if *alpha >= &two * beta {
        return Err(fail("alpha<2*beta"));
    }
    let half = rat(1, 2);
    let gamma = alpha.clone().max(&two * alpha) * &half;
    let delta = beta.clone().min(&two * beta) * &half;
    Ok((gamma, delta))
}

/// `gamma_delta` on possibly symbolic or infinite ends.
pub fn gamma_delta_sym(alpha: &Endpoint, beta: &Endpoint) -> Res<(Endpoint, Endpoint)> {
    let fail = |f: &str| DeductionError::HypothesisFailed {
        row: "gamma-delta".into(),
        failed: f.into(),
    };
    let (a2, b2) = (scale(alpha, 2), scale(beta, 2));
    if a2.cmp(beta)? != Ordering::Less {
        return Err(fail("2*alpha<beta"));
    }
    if alpha.cmp(&b2)? != Ordering::Less {
        return Err(fail("alpha<2*beta"));
    }
    let half = |e: Endpoint| match e {
        Endpoint::At(x) => Endpoint::At(x.scale(&rat(1, 2))),
        inf => inf,
    };
    let g = if alpha.cmp(&a2)? == Ordering::Less { a2 } else { alpha.clone() };
    let d = if beta.cmp(&b2)? == Ordering::Less { beta.clone() } else { b2 };
    Ok((half(g), half(d)))
}

fn min_end(xs: Vec<Endpoint>) -> Res<Endpoint> {
    let mut it = xs.into_iter();
    let mut m = it.next().expect("nonempty");
    for x in it {
        if x.cmp(&m)? == Ordering::Less {
            m = x;
        }
    }
    Ok(m)
}

/// Window radius: `m/2` when rational, else the simplest rational in
/// `]m/4, m/2[`.
fn pick_lambda(m: &Endpoint) -> Res<BigRational> {
    match m {
        Endpoint::PosInf => Ok(BigRational::one()),
        Endpoint::At(x) => match x.as_rational() {
            Some(q) if q.is_positive() => Ok(q * rat(1, 2)),
            _ => Ok(simplest_rational_between(
                Some(&x.scale(&rat(1, 4))),
                Some(&x.scale(&rat(1, 2))),
            )?),
        },
        Endpoint::NegInf => Err(DeductionError::EmptyDomain("window radius".into())),
    }
}

fn opt(e: &Endpoint) -> Option<&SymReal> {
    e.finite()
}

/// Two rationals `p < q` inside the interval.
fn rational_pair(iv: &Iv) -> Res<(BigRational, BigRational)> {
    let p = simplest_rational_between(opt(&iv.lo), opt(&iv.hi))?;
    let q = simplest_rational_between(Some(&SymReal::rational(p.clone())), opt(&iv.hi))?;
    Ok((p, q))
}

/// First pair in scan order satisfying the side condition.
fn rational_box(iv: &Iv, cond: impl Fn(&BigRational, &BigRational) -> bool) -> Res<(BigRational, BigRational)> {
    let (lo, hi) = match (&iv.lo, &iv.hi) {
        (Endpoint::At(a), Endpoint::At(b)) => (a.clone(), b.clone()),
        _ => {
            let (p, q) = rational_pair(iv)?;
            (SymReal::rational(p - BigRational::one()), SymReal::rational(q + BigRational::one()))
        }
    };
    let mut seen: Vec<BigRational> = Vec::new();
    let found = scan_rationals(&lo, &hi, 256, |r| {
        let r = r.clone();
        for s in &seen {
            let (l, m) = if *s < r { (s.clone(), r.clone()) } else { (r.clone(), s.clone()) };
            if cond(&l, &m) {
                return Some((l, m));
            }
        }
        seen.push(r);
        None
    })?;
    found.ok_or_else(|| DeductionError::EmptyDomain(format!("no rational box with the side condition in {iv}")))
}

/// Addition-theorem step for a fact `f` on `]α, β[` satisfying its row.
pub(crate) fn stage_addition(store: &mut Store, id: usize, law: Law) -> Res<Option<usize>> {
    let fact = store.fact(id)?.clone();
    let iv = match fact.domain.single_interval() {
        Some(iv) => iv.interior(),
        None => return Ok(None),
    };
    let (alpha, beta) = (&iv.lo, &iv.hi);
    if row_hypothesis(law, alpha, beta)?.is_err() {
        return Ok(None);
    }
    let (gamma, delta) = gamma_delta_sym(alpha, beta)?;
    let half_pi = || Endpoint::At(SymReal::pi_times(rat(1, 2)));
    let omega = match law {
        Law::Sinh | Law::Sin => {
            let mut bounds = vec![gamma.neg(), delta.clone()];
            if law == Law::Sin {
                bounds.push(half_pi());
            }
            let lam = SymReal::rational(pick_lambda(&min_end(bounds)?)?);
            Iv::sym(lam.neg(), lam)?
        }
        Law::Cos => {
            let positive = gamma.cmp(&Endpoint::int(0))? != Ordering::Less;
            let c = SymReal::pi_times(if positive { rat(1, 2) } else { rat(-1, 2) });
            let cm = Endpoint::At(c.clone());
            let m = min_end(vec![
                cm.add(&gamma.neg()).unwrap_or(Endpoint::PosInf),
                delta.add(&cm.neg()).unwrap_or(Endpoint::PosInf),
                half_pi(),
            ])?;
            let lam = SymReal::rational(pick_lambda(&m)?);
            Iv::sym(c.sub(&lam), c.add(&lam))?
        }
        _ => Iv::open(gamma, delta)?,
    };
    store.apply(Step::Addition {
        f: id,
        law,
        omega1: omega.clone(),
        omega2: omega,
    })
}

/// Case-specific steps on a law fact `g` (or its symmetrized form).
pub(crate) fn stage_law(store: &mut Store, id: usize) -> Res<()> {
    let fact = store.fact(id)?.clone();
    let b = match fact.domain.single_box() {
        Some(b) => b.interior(),
        None => return Ok(()),
    };
    match fact.func {
        Func::Law(Law::Sinh | Law::Sin | Law::Cos) => {
            store.apply(Step::Symmetrize { f: id })?;
        }
        Func::Sym(l) => {
            let positive = Iv::positive();
            let (u, _) = match b.0[0].intersect(&positive)? {
                Some(iv) => rational_pair(&iv)?,
                None => return Ok(()),
            };
            let vside = match b.0[1].intersect(&positive)? {
                Some(iv) => iv,
                None => return Ok(()),
            };
            let (p, q) = rational_pair(&vside)?;
            let set = if l == Law::Sin { ConicSet::W } else { ConicSet::U };
            let v = point_in(set, &p, &q)?.s;
            let Some(d1) = store.apply(Step::ConicD1 { f: id, u: u.clone(), v })? else {
                return Ok(());
            };
            let Some(root) = store.apply(Step::Bor { f: id, d1, u })? else {
                return Ok(());
            };
            store.apply(Step::Substitute { f: id, g: root })?;
        }
        Func::Law(Law::Cosh) => {
            let Some(side) = b.0[0].intersect(&b.0[1])? else {
                return Ok(());
            };
            let (p, q) = rational_pair(&side)?;
            let v = point_in(ConicSet::V, &p, &q)?.s;
            let Some(d1) = store.apply(Step::ConicD1 { f: id, u: v.clone(), v })? else {
                return Ok(());
            };
            store.apply(Step::Diagonal { f: id, d1 })?;
        }
        Func::Law(l @ (Law::Tanh | Law::Tan)) => {
            let Some(side) = b.0[0].intersect(&b.0[1])? else {
                return Ok(());
            };
            let (lambda, mu) = rational_box(&side, |a, b| {
                let r = a * b;
                r.is_positive() && !(l == Law::Tan && r.is_one())
            })?;
            store.apply(Step::Reciprocal { f: id, lambda, mu })?;
        }
        Func::Law(Law::Coth | Law::Cot) => {
            let Some(side) = b.0[0].intersect(&b.0[1])? else {
                return Ok(());
            };
            let (lambda, mu) = rational_box(&side, |a, b| !(a + b).is_zero())?;
            let u = simplest_rational_between(
                Some(&SymReal::rational(lambda.clone())),
                Some(&SymReal::rational(mu.clone())),
            )?;
            let Some(d1) = store.apply(Step::Reflect {
                f: id,
                lambda: lambda.clone(),
                mu: mu.clone(),
                u,
            })?
            else {
                return Ok(());
            };
            store.apply(Step::Square { f: id, d1, lambda, mu })?;
        }
        _ => {}
    }
    Ok(())
}

/// Result of the dispatcher on `]α, β[`.
#[derive(Clone, Debug)]
pub struct MaksaOutcome {
    pub verdict: Verdict,
    pub trace: ProofTrace,
    /// The violated inequality when the row hypothesis fails.
    pub failed: Option<String>,
}

/// Decides the row for `law` on `]α, β[` and, when it holds, replays the
/// case through the engine starting from the hypothesis on `f = law.function()`.
pub fn maksa_verdict(law: Law, alpha: &BigRational, beta: &BigRational, cfg: &Config) -> Res<MaksaOutcome> {
    let (a, b) = (Endpoint::rational(alpha.clone()), Endpoint::rational(beta.clone()));
    let failed = if alpha >= beta {
        Some("alpha<beta".to_string())
    } else {
        row_hypothesis(law, &a, &b)?.err()
    };
    if let Some(f) = failed {
        return Ok(MaksaOutcome {
            verdict: Verdict::Inapplicable(format!("{}: {f} fails", law.case_id())),
            trace: ProofTrace::default(),
            failed: Some(f),
        });
    }
    let hyp = Fact::new(Func::Elem(law.function()), Domain::interval(Iv::open(a, b)?))?;
    let out = run_deduction(&[hyp], &Verdict::StandardDerivation, cfg)?;
    Ok(MaksaOutcome {
        verdict: out.verdict,
        trace: out.trace,
        failed: None,
    })
}

/// Printable `(α, β)`.
pub fn describe(alpha: &BigRational, beta: &BigRational) -> String {
    format!("]{}, {}[", format_rational(alpha), format_rational(beta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn gamma_delta_examples() {
        assert_eq!(gamma_delta(&q(-1, 1), &q(1, 1)).unwrap(), (q(-1, 2), q(1, 2)));
        assert_eq!(gamma_delta(&q(1, 1), &q(3, 1)).unwrap(), (q(1, 1), q(3, 2)));
        assert_eq!(gamma_delta(&q(-3, 1), &q(-1, 1)).unwrap(), (q(-3, 2), q(-1, 1)));
        assert!(matches!(
            gamma_delta(&q(1, 1), &q(2, 1)),
            Err(DeductionError::HypothesisFailed { .. })
        ));
    }

    #[test]
    fn row_failures() {
        let e = |n, d| Endpoint::rational(q(n, d));
        assert_eq!(row_hypothesis(Law::Cos, &e(1, 1), &e(2, 1)).unwrap(), Err("pi<beta".into()));
        assert_eq!(row_hypothesis(Law::Cos, &e(1, 1), &e(7, 2)).unwrap(), Ok(()));
        assert_eq!(row_hypothesis(Law::Sinh, &e(1, 1), &e(2, 1)).unwrap(), Err("alpha<0".into()));
        assert_eq!(row_hypothesis(Law::Exp, &e(0, 1), &e(1, 1)).unwrap(), Ok(()));
    }
}
