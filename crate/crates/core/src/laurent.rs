//! Laurent polynomials over ℚ and the classification of derivation identities
//! of the form `Q'(u)·d(P(u)) = P'(u)·d(Q(u))`.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::deduction::Verdict;
use crate::exactnum::{format_rational, int, parse_rational, BigRational, Bound, OpenInterval};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("P - p0 and Q - q0 are linearly dependent")]
    DependentTails,
    #[error("interval {0} contains 0 but the Laurent polynomial has negative exponents")]
    IntervalContainsZero(String),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("expected a polynomial (no negative exponents)")]
    NegativeExponent,
}

/// Finite sum `Σ c_k u^k` with integer `k` and nonzero rational `c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn monomial(c: BigRational, k: i64) -> Self {
        Self::from_terms([(k, c)])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `Σ c_i u^i` for the listed `(i, c_i)` with integer coefficients.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(k, c)| (k, int(c))))
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.min_exponent().is_some_and(|k| k < 0)
    }

    pub fn is_polynomial(&self) -> bool {
        !self.has_negative_exponents()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, -c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * q)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    /// `F − F(0)`-style removal of the constant coefficient.
    pub fn without_constant(&self) -> Self {
        Self::from_terms(self.terms().filter(|(k, _)| *k != 0).map(|(k, c)| (k, c.clone())))
    }

    /// Value at a nonzero rational (or at 0 for polynomials).
    pub fn eval(&self, u: &BigRational) -> Option<BigRational> {
        if u.is_zero() && self.has_negative_exponents() {
            return None;
        }
        let mut acc = BigRational::zero();
        for (k, c) in self.terms() {
            let p = if k >= 0 {
                num::traits::pow(u.clone(), k as usize)
            } else {
                num::traits::pow(u.recip(), k.unsigned_abs() as usize)
            };
            acc += c * p;
        }
        Some(acc)
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.terms()
            .map(|(k, c)| crate::exactnum::rational_to_f64(c) * u.powi(k as i32))
            .sum()
    }

    /// `(u^N·F, N)` with `N = max(0, −min exponent)`, a polynomial with the
    /// same nonzero roots as `F`.
    pub fn cleared(&self) -> (Poly, u64) {
        let shift = self.min_exponent().map_or(0, |k| (-k).max(0));
        let Some(top) = self.max_exponent() else {
            return (Poly::zero(), 0);
        };
        let len = (top + shift + 1) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (k, c) in self.terms() {
            coeffs[(k + shift) as usize] = c.clone();
        }
        (Poly::new(coeffs), shift as u64)
    }

    pub fn to_poly(&self) -> Result<Poly, LaurentError> {
        if self.has_negative_exponents() {
            return Err(LaurentError::NegativeExponent);
        }
        Ok(self.cleared().0)
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }

    pub fn degree(&self) -> Option<i64> {
        self.max_exponent()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            if *k == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            match k {
                1 => write!(f, "u")?,
                _ => write!(f, "u^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            terms: self
                .terms()
                .map(|(k, c)| TermRepr {
                    k,
                    c: format_rational(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let mut out = LaurentPoly::zero();
        for t in repr.terms {
            let c = parse_rational(&t.c).map_err(de::Error::custom)?;
            if c.is_zero() {
                return Err(de::Error::custom(format!("zero coefficient for exponent {}", t.k)));
            }
            if out.terms.contains_key(&t.k) {
                return Err(de::Error::custom(format!("duplicate exponent {}", t.k)));
            }
            out.terms.insert(t.k, c);
        }
        Ok(out)
    }
}

pub fn formal_derivative(f: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(f.terms().map(|(k, c)| (k - 1, c * int(k))))
}

/// `P'Q − PQ'`.
pub fn wronskian(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    formal_derivative(p).mul(q).sub(&p.mul(&formal_derivative(q)))
}

fn joint_support(p: &LaurentPoly, q: &LaurentPoly) -> Vec<i64> {
    let mut ks: Vec<i64> = p.terms.keys().chain(q.terms.keys()).copied().collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// `p_i q_j − p_j q_i`.
fn minor(p: &LaurentPoly, q: &LaurentPoly, i: i64, j: i64) -> BigRational {
    p.coeff(i) * q.coeff(j) - p.coeff(j) * q.coeff(i)
}

/// Whether `aP + bQ = 0` for some rational `(a, b) ≠ (0, 0)`, i.e. the
/// coefficient vectors are proportional.
pub fn linearly_dependent(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    let ks = joint_support(p, q);
    let Some(&first) = ks.first() else {
        return true;
    };
    ks.iter().all(|&j| minor(p, q, first, j).is_zero())
}

/// Pivot indices `(k0, ℓ)`: `k0` is the least nonzero index carrying a
/// nonzero coefficient pair, `ℓ` the least later nonzero index whose pair is
/// not parallel to the one at `k0`.
pub fn find_pivot_indices(p: &LaurentPoly, q: &LaurentPoly) -> Result<(i64, i64), LaurentError> {
    let ks: Vec<i64> = joint_support(p, q).into_iter().filter(|&k| k != 0).collect();
    let Some(&k0) = ks.first() else {
        return Err(LaurentError::DependentTails);
    };
    ks.iter()
        .copied()
        .find(|&l| l > k0 && !minor(p, q, k0, l).is_zero())
        .map(|l| (k0, l))
        .ok_or(LaurentError::DependentTails)
}

/// Whether `f` has no real root in `interval` (exact Sturm count on `u^N·F`).
pub fn nonvanishing_on(f: &LaurentPoly, interval: &OpenInterval) -> Result<bool, LaurentError> {
    if f.has_negative_exponents() && interval.contains_zero() {
        return Err(LaurentError::IntervalContainsZero(interval.to_string()));
    }
    if f.is_zero() {
        return Ok(false);
    }
    let (poly, _) = f.cleared();
    Ok(poly.count_roots_open(interval.lo(), interval.hi()) == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "i")]
    CaseI,
    #[serde(rename = "ii")]
    CaseII,
    #[serde(rename = "iii")]
    CaseIII,
}

impl CaseTag {
    pub fn label(self) -> &'static str {
        match self {
            CaseTag::CaseI => "i",
            CaseTag::CaseII => "ii",
            CaseTag::CaseIII => "iii",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pivot {
    pub k0: i64,
    pub ell: i64,
    #[serde(with = "crate::exactnum::rational_string")]
    pub r: BigRational,
}

/// One reasoning step of the classification, in the order it was taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PqNote {
    pub step: String,
    pub detail: String,
}

fn note(step: &str, detail: impl Into<String>) -> PqNote {
    PqNote {
        step: step.to_string(),
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PQCase {
    #[serde(rename = "case")]
    pub tag: CaseTag,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivot: Option<Pivot>,
    pub trace: Vec<PqNote>,
}

/// First of `1, −1, 2, −2, …` where `w` does not vanish.
fn nonroot_witness(w: &LaurentPoly) -> BigRational {
    (1..)
        .flat_map(|n: i64| [int(n), int(-n)])
        .find(|u| w.eval(u).is_some_and(|v| !v.is_zero()))
        .expect("a nonzero Laurent polynomial has finitely many roots")
}

/// Trichotomy for `Q'(u)·d(P(u)) = P'(u)·d(Q(u))` on an interval avoiding 0.
pub fn classify_pq(p: &LaurentPoly, q: &LaurentPoly) -> PQCase {
    let mut trace = Vec::new();
    let w = wronskian(p, q);
    if linearly_dependent(p, q) {
        trace.push(note(
            "dependence",
            format!("P = {p} and Q = {q} are linearly dependent; Wronskian P'Q - PQ' = 0"),
        ));
        trace.push(note(
            "homogeneity",
            "Q is a rational multiple of P (or P = 0), so the identity holds for every additive d",
        ));
        return PQCase {
            tag: CaseTag::CaseI,
            verdict: Verdict::Unconstrained,
            pivot: None,
            trace,
        };
    }
    let u0 = nonroot_witness(&w);
    trace.push(note(
        "wronskian",
        format!(
            "P'Q - PQ' = {w}; nonzero at u0 = {}, value {}",
            u0,
            w.eval(&u0).unwrap()
        ),
    ));
    trace.push(note(
        "d1-zero",
        "at rational u both sides reduce to multiples of d(1); Q'(u)P(u)d(1) = P'(u)Q(u)d(1) \
         fails at u0, so d(1) = 0",
    ));
    let p0 = p.without_constant();
    let q0 = q.without_constant();
    if linearly_dependent(&p0, &q0) {
        let mut detail = format!("P - p0 = {p0} and Q - q0 = {q0} are linearly dependent");
        if p0.is_zero() || q0.is_zero() {
            detail.push_str(" (degenerate: one tail is identically zero)");
        }
        trace.push(note("tails", detail));
        trace.push(note(
            "sufficiency",
            "with d(1) = 0 the constants drop out and the dependent tails satisfy the identity",
        ));
        return PQCase {
            tag: CaseTag::CaseII,
            verdict: Verdict::D1Zero,
            pivot: None,
            trace,
        };
    }
    trace.push(note(
        "tails",
        format!("P - p0 = {p0} and Q - q0 = {q0} are linearly independent"),
    ));
    let (k0, ell) = find_pivot_indices(p, q).expect("independent tails have a pivot");
    let r = BigRational::new(k0.into(), ell.into());
    trace.push(note(
        "pivot",
        format!(
            "k0 = {k0}, ell = {ell}: p_k0 q_ell - p_ell q_k0 = {} != 0",
            minor(p, q, k0, ell)
        ),
    ));
    trace.push(note(
        "power-reduction",
        format!(
            "the lowest-order term in the rational scaling parameter gives \
             ell d(v^k0) = k0 v^(k0-ell) d(v^ell); with u = v^ell this is d(u^r) = r u^(r-1) d(u), r = {r}"
        ),
    ));
    trace.push(note(
        "power-lemma",
        format!("r = {r} is rational and not 0 or 1, so d is a standard derivation"),
    ));
    PQCase {
        tag: CaseTag::CaseIII,
        verdict: Verdict::StandardDerivation,
        pivot: Some(Pivot { k0, ell, r }),
        trace,
    }
}

/// Three-way split for a polynomial `P` derivated on an interval:
/// constant → `d(1) = 0`; degree 1 → `P(0)·d(1) = 0`; degree ≥ 2 → standard.
pub fn classify_polynomial(p: &LaurentPoly, _interval: &OpenInterval) -> Result<Verdict, LaurentError> {
    if p.has_negative_exponents() {
        return Err(LaurentError::NegativeExponent);
    }
    match p.degree() {
        None => Err(LaurentError::ZeroPolynomial),
        Some(0) => Ok(Verdict::D1Zero),
        Some(1) => Ok(if p.coeff(0).is_zero() {
            Verdict::Unconstrained
        } else {
            Verdict::D1Zero
        }),
        Some(_) => Ok(Verdict::StandardDerivation),
    }
}

/// Reasons a `P∘Q⁻¹` hypothesis does not force a standard derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorPqFailure {
    DependentTails,
    QPrimeVanishes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorPqOutcome {
    Standard,
    Inapplicable(CorPqFailure),
}

/// `d` derivates `P∘Q⁻¹` on `Q(I)`: standard iff `Q'` has no root in `I`
/// and the tails of `P`, `Q` are independent.
pub fn check_cor_pq(
    p: &LaurentPoly,
    q: &LaurentPoly,
    interval: &OpenInterval,
) -> Result<CorPqOutcome, LaurentError> {
    if interval.contains_zero() {
        return Err(LaurentError::IntervalContainsZero(interval.to_string()));
    }
    if !nonvanishing_on(&formal_derivative(q), interval)? {
        return Ok(CorPqOutcome::Inapplicable(CorPqFailure::QPrimeVanishes));
    }
    if linearly_dependent(&p.without_constant(), &q.without_constant()) {
        return Ok(CorPqOutcome::Inapplicable(CorPqFailure::DependentTails));
    }
    Ok(CorPqOutcome::Standard)
}

/// Natural domain of `x ↦ x^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerDomainKind {
    Reals,
    NonzeroReals,
    NonNegative,
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerDomain {
    #[serde(with = "crate::exactnum::rational_string")]
    pub r: BigRational,
    pub domain: PowerDomainKind,
}

impl PowerDomain {
    /// The four-way table on the parity of the denominator and the sign of
    /// the numerator of `r` in lowest terms.
    pub fn of(r: &BigRational) -> Self {
        let odd = r.denom() % 2u32 == 1u32.into();
        let nonneg = !r.numer().is_negative();
        let domain = match (odd, nonneg) {
            (true, true) => PowerDomainKind::Reals,
            (true, false) => PowerDomainKind::NonzeroReals,
            (false, true) => PowerDomainKind::NonNegative,
            (false, false) => PowerDomainKind::Positive,
        };
        PowerDomain { r: r.clone(), domain }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        match self.domain {
            PowerDomainKind::Reals => true,
            PowerDomainKind::NonzeroReals => !x.is_zero(),
            PowerDomainKind::NonNegative => !x.is_negative(),
            PowerDomainKind::Positive => x.is_positive(),
        }
    }

    /// Whether the open interval lies inside the domain.
    pub fn contains_interval(&self, i: &OpenInterval) -> bool {
        let zero = Bound::rational(BigRational::zero());
        match self.domain {
            PowerDomainKind::Reals => true,
            PowerDomainKind::NonzeroReals => !i.contains_zero(),
            PowerDomainKind::NonNegative | PowerDomainKind::Positive => {
                i.lo().cmp_bound(&zero) != std::cmp::Ordering::Less
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn l(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    fn iv(a: i64, b: i64) -> OpenInterval {
        OpenInterval::rational(int(a), int(b)).unwrap()
    }

    #[test]
    fn derivatives() {
        assert_eq!(formal_derivative(&l(&[(2, 1)])), l(&[(1, 2)]));
        assert_eq!(formal_derivative(&l(&[(0, 3), (-1, 1)])), l(&[(-2, -1)]));
        assert!(formal_derivative(&LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn wronskians() {
        assert_eq!(wronskian(&l(&[(1, 1)]), &l(&[(2, 1)])), l(&[(2, -1)]));
        assert!(wronskian(&l(&[(1, 1), (0, 1)]), &l(&[(1, 2), (0, 2)])).is_zero());
        assert_eq!(wronskian(&l(&[(-1, 1)]), &l(&[(1, 1)])), l(&[(-1, -2)]));
    }

    #[test]
    fn dependence() {
        assert!(linearly_dependent(&l(&[(2, 2)]), &l(&[(2, 3)])));
        assert!(!linearly_dependent(&l(&[(1, 1)]), &l(&[(2, 1)])));
        assert!(linearly_dependent(&LaurentPoly::zero(), &l(&[(1, 1)])));
    }

    #[test]
    fn pivots() {
        assert_eq!(find_pivot_indices(&l(&[(1, 1), (3, 1)]), &l(&[(1, 1), (3, -1)])), Ok((1, 3)));
        assert_eq!(find_pivot_indices(&l(&[(1, 1)]), &l(&[(2, 1)])), Ok((1, 2)));
        assert_eq!(find_pivot_indices(&l(&[(-1, 1), (1, 1)]), &l(&[(-1, 2), (1, 1)])), Ok((-1, 1)));
        assert_eq!(
            find_pivot_indices(&l(&[(0, 4), (1, 1)]), &l(&[(1, 2)])),
            Err(LaurentError::DependentTails)
        );
    }

    #[test]
    fn nonvanishing() {
        assert_eq!(nonvanishing_on(&l(&[(1, 2)]), &iv(1, 2)), Ok(true));
        assert_eq!(nonvanishing_on(&l(&[(2, 1), (0, -2)]), &iv(1, 2)), Ok(false));
        assert_eq!(nonvanishing_on(&l(&[(2, 1), (0, 1)]), &iv(-5, 5)), Ok(true));
        assert!(matches!(
            nonvanishing_on(&l(&[(-1, 1)]), &iv(-1, 1)),
            Err(LaurentError::IntervalContainsZero(_))
        ));
        // 1/u - 2 vanishes at 1/2
        assert_eq!(
            nonvanishing_on(&l(&[(-1, 1), (0, -2)]), &OpenInterval::rational(rat(1, 4), int(1)).unwrap()),
            Ok(false)
        );
    }

    #[test]
    fn trichotomy_examples() {
        let c = classify_pq(&l(&[(-1, 3)]), &l(&[(-1, 1)]));
        assert_eq!((c.tag, c.verdict), (CaseTag::CaseI, Verdict::Unconstrained));
        let c = classify_pq(&l(&[(1, 1), (0, 1)]), &l(&[(1, 2), (0, 5)]));
        assert_eq!((c.tag, c.verdict), (CaseTag::CaseII, Verdict::D1Zero));
        let c = classify_pq(&l(&[(2, 1)]), &l(&[(1, 1)]));
        assert_eq!((c.tag, c.verdict.clone()), (CaseTag::CaseIII, Verdict::StandardDerivation));
        assert_eq!(c.pivot, Some(Pivot { k0: 1, ell: 2, r: rat(1, 2) }));
    }

    #[test]
    fn polynomial_split() {
        let i = iv(0, 1);
        assert_eq!(classify_polynomial(&l(&[(0, 7)]), &i), Ok(Verdict::D1Zero));
        assert_eq!(classify_polynomial(&l(&[(1, 3)]), &i), Ok(Verdict::Unconstrained));
        assert_eq!(classify_polynomial(&l(&[(2, 1), (0, 1)]), &i), Ok(Verdict::StandardDerivation));
        assert_eq!(classify_polynomial(&LaurentPoly::zero(), &i), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn composite_inverse() {
        assert_eq!(check_cor_pq(&l(&[(3, 1)]), &l(&[(2, 1)]), &iv(1, 2)), Ok(CorPqOutcome::Standard));
        assert_eq!(
            check_cor_pq(&l(&[(1, 1)]), &l(&[(1, 2)]), &iv(1, 2)),
            Ok(CorPqOutcome::Inapplicable(CorPqFailure::DependentTails))
        );
        assert_eq!(
            check_cor_pq(&l(&[(2, 1)]), &l(&[(3, 1), (1, -3)]), &iv(1, 2)),
            Ok(CorPqOutcome::Standard)
        );
        assert_eq!(
            check_cor_pq(&l(&[(2, 1)]), &l(&[(3, 1), (1, -3)]), &iv(-1, 2)),
            Err(LaurentError::IntervalContainsZero("]-1, 2[".into()))
        );
        assert_eq!(
            check_cor_pq(&l(&[(2, 1)]), &l(&[(3, 1), (1, -3)]), &OpenInterval::rational(rat(1, 2), int(2)).unwrap()),
            Ok(CorPqOutcome::Inapplicable(CorPqFailure::QPrimeVanishes))
        );
    }

    #[test]
    fn power_domains() {
        use PowerDomainKind::*;
        assert_eq!(PowerDomain::of(&int(1)).domain, Reals);
        assert_eq!(PowerDomain::of(&int(-2)).domain, NonzeroReals);
        assert_eq!(PowerDomain::of(&rat(-1, 2)).domain, Positive);
        assert_eq!(PowerDomain::of(&rat(1, 2)).domain, NonNegative);
        assert_eq!(PowerDomain::of(&int(0)).domain, Reals);
    }

    #[test]
    fn json_shape() {
        let p = l(&[(2, 1), (-1, -3)]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"terms":[{"k":-1,"c":"-3"},{"k":2,"c":"1"}]}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&js).unwrap(), p);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"terms":[{"k":1,"c":"0"}]}"#).is_err());
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"terms":[{"k":1,"c":"1"},{"k":1,"c":"2"}]}"#).is_err());
    }
}
