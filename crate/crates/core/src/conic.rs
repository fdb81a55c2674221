//! Dense rational points on the three unit conics
//!
//! * `U = {s : √(1+s²) ∈ ℚ}`, parametrized by `s = 2r/(1−r²)`,
//! * `V = {s : |s| > 1, √(s²−1) ∈ ℚ}`, parametrized by `s = (1+r²)/(1−r²)`,
//! * `W = {s : |s| < 1, √(1−s²) ∈ ℚ}`, parametrized by `s = (1−r²)/(1+r²)`.
//!
//! For a target `x` and tolerance `ε` each set has an explicit open interval
//! of parameters whose image lies in `]x−ε, x+ε[`; the simplest rational in
//! it gives a certificate.

use std::fmt;
use std::str::FromStr;

use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{
    format_rational, int, is_rational_square, smallest_denominator_rational, BigRational,
    Bound, ExactError, OpenInterval, QuadraticNumber,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConicSet {
    U,
    V,
    W,
}

impl ConicSet {
    pub const ALL: [ConicSet; 3] = [ConicSet::U, ConicSet::V, ConicSet::W];

    /// The parametrization `r ↦ s`; `None` at its poles.
    pub fn param(self, r: &BigRational) -> Option<BigRational> {
        let r2 = r * r;
        let one = BigRational::one();
        let (num, den) = match self {
            ConicSet::U => (r * int(2), &one - &r2),
            ConicSet::V => (&one + &r2, &one - &r2),
            ConicSet::W => (&one - &r2, &one + &r2),
        };
        (!den.is_zero()).then(|| num / den)
    }

    /// `1+s²`, `s²−1` or `1−s²`.
    pub fn radicand(self, s: &BigRational) -> BigRational {
        let s2 = s * s;
        match self {
            ConicSet::U => BigRational::one() + s2,
            ConicSet::V => s2 - BigRational::one(),
            ConicSet::W => BigRational::one() - s2,
        }
    }

    fn in_ambient(self, s: &BigRational) -> bool {
        match self {
            ConicSet::U => true,
            ConicSet::V => s.abs() > BigRational::one(),
            ConicSet::W => s.abs() < BigRational::one(),
        }
    }

    /// Companion value from the closed form in `r = m/n` (lowest terms).
    pub fn companion(self, r: &BigRational) -> Option<BigRational> {
        let m = BigRational::from_integer(r.numer().clone());
        let n = BigRational::from_integer(r.denom().clone());
        let (num, den) = match self {
            ConicSet::U => (&n * &n + &m * &m, (&n * &n - &m * &m).abs()),
            ConicSet::V => ((int(2) * &n * &m).abs(), (&n * &n - &m * &m).abs()),
            ConicSet::W => ((int(2) * &n * &m).abs(), &n * &n + &m * &m),
        };
        (!den.is_zero()).then(|| num / den)
    }
}

impl fmt::Display for ConicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConicSet::U => "U",
            ConicSet::V => "V",
            ConicSet::W => "W",
        };
        f.write_str(s)
    }
}

impl FromStr for ConicSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "U" => Ok(ConicSet::U),
            "V" => Ok(ConicSet::V),
            "W" => Ok(ConicSet::W),
            _ => Err(format!("unknown conic set `{s}` (expected U, V or W)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error("precondition violated for {set} at x = {x}, eps = {eps}: {failed}")]
    PreconditionViolated {
        set: ConicSet,
        x: String,
        eps: String,
        failed: String,
    },
    #[error("parameter r = {0} is a pole of the parametrization")]
    DegenerateParameter(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn violated(set: ConicSet, x: &BigRational, eps: &BigRational, failed: &str) -> ConicError {
    ConicError::PreconditionViolated {
        set,
        x: format_rational(x),
        eps: format_rational(eps),
        failed: failed.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensePointCert {
    pub set: ConicSet,
    #[serde(with = "crate::exactnum::rational_string")]
    pub x: BigRational,
    /// Tolerance actually used after clamping.
    #[serde(with = "crate::exactnum::rational_string")]
    pub eps: BigRational,
    #[serde(with = "crate::exactnum::rational_string")]
    pub r: BigRational,
    #[serde(with = "crate::exactnum::rational_string")]
    pub s: BigRational,
    #[serde(with = "crate::exactnum::rational_string")]
    pub companion: BigRational,
    pub witness_interval: OpenInterval,
}

impl DensePointCert {
    /// Re-check every invariant exactly.
    pub fn verify(&self) -> bool {
        let close = (&self.s - &self.x).abs() < self.eps;
        let comp = &self.companion * &self.companion == self.set.radicand(&self.s);
        close
            && comp
            && self.companion.is_positive()
            && self.set.param(&self.r).as_ref() == Some(&self.s)
            && self.witness_interval.contains_rational(&self.r)
            && membership(self.set, &self.s)
    }
}

/// `√q` as a surd endpoint (`q ≥ 0`).
fn sqrt_q(q: BigRational) -> Result<QuadraticNumber, ExactError> {
    QuadraticNumber::sqrt_of(q)
}

/// `ρ(y) = −1/y + sign(y)·√(1/y² + 1)`, the parameter in `]−1, 1[` with
/// `2ρ/(1−ρ²) = y` (for `y ≠ 0`).
fn u_inverse(y: &BigRational) -> Result<QuadraticNumber, ExactError> {
    let inv = y.recip();
    let b = if y.is_positive() { int(1) } else { int(-1) };
    QuadraticNumber::new(-inv.clone(), b, &inv * &inv + int(1))
}

fn check_pre(set: ConicSet, x: &BigRational, eps: &BigRational) -> Result<(), ConicError> {
    let one = BigRational::one();
    if !eps.is_positive() {
        return Err(violated(set, x, eps, "0 < eps"));
    }
    match set {
        ConicSet::W => {
            if x.abs() >= one {
                return Err(violated(set, x, eps, "-1 < x < 1"));
            }
            if *eps >= &one + x || *eps >= &one - x {
                return Err(violated(set, x, eps, "eps < min(1 + x, 1 - x)"));
            }
        }
        ConicSet::V => {
            if x.abs() <= one {
                return Err(violated(set, x, eps, "|x| > 1"));
            }
            if *eps >= x.abs() - &one {
                return Err(violated(set, x, eps, "eps < |x| - 1"));
            }
        }
        ConicSet::U => {
            if x.is_zero() {
                return Err(violated(set, x, eps, "x != 0"));
            }
            if *eps >= x.abs() {
                return Err(violated(set, x, eps, "eps < |x|"));
            }
        }
    }
    Ok(())
}

/// Open interval of parameters `r` whose image under the set's
/// parametrization lies in `]x−ε, x+ε[`.
pub fn witness_interval(
    set: ConicSet,
    x: &BigRational,
    eps: &BigRational,
) -> Result<OpenInterval, ConicError> {
    check_pre(set, x, eps)?;
    let one = BigRational::one();
    let (xm, xp) = (x - eps, x + eps);
    let (lo, hi) = match set {
        // r = √((1−s)/(1+s)), decreasing in s
        ConicSet::W => (
            sqrt_q((&one - &xp) / (&one + &xp))?,
            sqrt_q((&one - &xm) / (&one + &xm))?,
        ),
        // r = √((s−1)/(s+1)), increasing in s on both branches
        ConicSet::V => (
            sqrt_q((&xm - &one) / (&xm + &one))?,
            sqrt_q((&xp - &one) / (&xp + &one))?,
        ),
        // r = ρ(s), increasing in s; x±ε share the sign of x
        ConicSet::U => (u_inverse(&xm)?, u_inverse(&xp)?),
    };
    Ok(OpenInterval::new(Bound::Finite(lo), Bound::Finite(hi))?)
}

/// Largest admissible tolerance, halved, when `eps` is out of range.
fn clamp_eps(set: ConicSet, x: &BigRational, eps: &BigRational) -> BigRational {
    let one = BigRational::one();
    let bound = match set {
        ConicSet::W => (&one + x).min(&one - x),
        ConicSet::V => x.abs() - &one,
        ConicSet::U => x.abs(),
    };
    if *eps >= bound {
        bound / int(2)
    } else {
        eps.clone()
    }
}

/// Certificate for a point of `set` within `eps` of `x`.
pub fn dense_point(
    set: ConicSet,
    x: &BigRational,
    eps: &BigRational,
) -> Result<DensePointCert, ConicError> {
    if !eps.is_positive() {
        return Err(violated(set, x, eps, "0 < eps"));
    }
    let one = BigRational::one();
    let ambient_ok = match set {
        ConicSet::W => x.abs() < one,
        ConicSet::V => x.abs() > one,
        ConicSet::U => true,
    };
    if !ambient_ok {
        let failed = if set == ConicSet::W { "-1 < x < 1" } else { "|x| > 1" };
        return Err(violated(set, x, eps, failed));
    }
    if set == ConicSet::U && x.is_zero() {
        let zero = BigRational::zero();
        return Ok(DensePointCert {
            set,
            x: zero.clone(),
            eps: eps.clone(),
            r: zero.clone(),
            s: zero,
            companion: one,
            witness_interval: OpenInterval::rational(-eps.clone(), eps.clone())?,
        });
    }
    let eps = clamp_eps(set, x, eps);
    let interval = witness_interval(set, x, &eps)?;
    let r = smallest_denominator_rational(&interval)?;
    let s = set
        .param(&r)
        .ok_or_else(|| ConicError::DegenerateParameter(format_rational(&r)))?;
    let companion = set
        .companion(&r)
        .ok_or_else(|| ConicError::DegenerateParameter(format_rational(&r)))?;
    let cert = DensePointCert {
        set,
        x: x.clone(),
        eps,
        r,
        s,
        companion,
        witness_interval: interval,
    };
    assert!(cert.verify(), "certificate failed exact verification: {cert:?}");
    Ok(cert)
}

/// Whether `s` belongs to the set.
pub fn membership(set: ConicSet, s: &BigRational) -> bool {
    set.in_ambient(s)
        && matches!(is_rational_square(&set.radicand(s)), Ok(Some(_)))
}

/// A point of `set` inside the open interval `]lo, hi[` (rational ends),
/// found through `dense_point` at the midpoint.
pub fn point_in(set: ConicSet, lo: &BigRational, hi: &BigRational) -> Result<DensePointCert, ConicError> {
    let mid = (lo + hi) / int(2);
    let half = (hi - lo) / int(2);
    let cert = dense_point(set, &mid, &half)?;
    debug_assert!(lo < &cert.s && &cert.s < hi);
    Ok(cert)
}
