//! Reduced rational functions in ℚ(t).

use std::fmt;

use num::traits::{One, Zero};

use crate::exactnum::{int, BigRational};
use crate::poly::Poly;

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // both inputs are reduced, so only cross factors can cancel
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.div_rem(&g1).0.mul(&other.num.div_rem(&g2).0);
        let den = self.den.div_rem(&g2).0.mul(&other.den.div_rem(&g1).0);
        Self::normalized(num, den)
    }

    /// Makes an already coprime pair monic in the denominator.
    fn normalized(num: Poly, den: Poly) -> Self {
        let inv = den.leading().expect("nonzero denominator").recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.recip()?))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.num.scale(q), self.den.clone()).unwrap()
    }

    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).ok()?;
        Some(Self::normalized(base.num.pow(e), base.den.pow(e)))
    }

    /// Value at a rational point, if the denominator does not vanish there.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    /// `d/dt`, the computable derivation of ℚ(t).
    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(num, self.den.mul(&self.den)).unwrap()
    }

    /// Polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(num: &[i64], den: &[i64]) -> Option<Self> {
        let p = |cs: &[i64]| Poly::new(cs.iter().map(|&c| int(c)).collect());
        Self::new(p(num), p(den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
