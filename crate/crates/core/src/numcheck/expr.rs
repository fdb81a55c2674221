//! Differentiable expressions in several variables with symbolic partial
//! derivatives, floating-point evaluation and exact evaluation in ℚ(t).

use std::fmt;

use num::traits::{One, Signed, ToPrimitive, Zero};

use super::ratfunc::RatFunc;
use super::NumcheckError;
use crate::elementary::{Elementary, Law};
use crate::exactnum::{int, rat, rational_to_f64, BigRational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(BigRational),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigRational),
    Apply(Elementary, Box<Expr>),
}

use Expr::*;

impl Expr {
    pub fn c(q: BigRational) -> Self {
        Const(q)
    }

    pub fn int(n: i64) -> Self {
        Const(int(n))
    }

    pub fn var(i: usize) -> Self {
        Var(i)
    }

    fn as_const(&self) -> Option<&BigRational> {
        match self {
            Const(q) => Some(q),
            _ => None,
        }
    }

    fn is_const(&self, v: i64) -> bool {
        self.as_const() == Some(&int(v))
    }

    pub fn neg(self) -> Self {
        match self {
            Const(q) => Const(-q),
            Neg(x) => *x,
            x => Neg(Box::new(x)),
        }
    }

    pub fn add(self, o: Expr) -> Self {
        match (self.as_const(), o.as_const()) {
            (Some(a), Some(b)) => return Const(a + b),
            (Some(a), _) if a.is_zero() => return o,
            (_, Some(b)) if b.is_zero() => return self,
            _ => {}
        }
        Add(Box::new(self), Box::new(o))
    }

    pub fn sub(self, o: Expr) -> Self {
        match (self.as_const(), o.as_const()) {
            (Some(a), Some(b)) => return Const(a - b),
            (_, Some(b)) if b.is_zero() => return self,
            (Some(a), _) if a.is_zero() => return o.neg(),
            _ => {}
        }
        Sub(Box::new(self), Box::new(o))
    }

    pub fn mul(self, o: Expr) -> Self {
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            return Const(a * b);
        }
        if self.is_const(0) || o.is_const(0) {
            return Expr::int(0);
        }
        if self.is_const(1) {
            return o;
        }
        if o.is_const(1) {
            return self;
        }
        if self.is_const(-1) {
            return o.neg();
        }
        if o.is_const(-1) {
            return self.neg();
        }
        Mul(Box::new(self), Box::new(o))
    }

    pub fn div(self, o: Expr) -> Self {
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            if !b.is_zero() {
                return Const(a / b);
            }
        }
        if self.is_const(0) {
            return Expr::int(0);
        }
        if o.is_const(1) {
            return self;
        }
        Div(Box::new(self), Box::new(o))
    }

    pub fn pow(self, r: BigRational) -> Self {
        if r.is_zero() {
            return Expr::int(1);
        }
        if r.is_one() {
            return self;
        }
        if let Some(q) = self.as_const() {
            if r.is_integer() {
                if let Some(k) = r.to_i32() {
                    if k >= 0 {
                        return Const(num::traits::pow(q.clone(), k as usize));
                    }
                    if !q.is_zero() {
                        return Const(num::traits::pow(q.recip(), k.unsigned_abs() as usize));
                    }
                }
            }
        }
        if let Pow(x, s) = self {
            // fold integer exponents only: (x^(1/2))^2 differs from x for x < 0
            if s.is_integer() && r.is_integer() {
                return x.pow(s * r);
            }
            return Pow(Box::new(Pow(x, s)), r);
        }
        Pow(Box::new(self), r)
    }

    pub fn sqrt(self) -> Self {
        self.pow(rat(1, 2))
    }

    pub fn apply(f: Elementary, x: Expr) -> Self {
        Apply(f, Box::new(x))
    }

    /// Largest variable index plus one.
    pub fn arity(&self) -> usize {
        match self {
            Const(_) => 0,
            Var(i) => i + 1,
            Neg(x) | Pow(x, _) | Apply(_, x) => x.arity(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.arity().max(b.arity()),
        }
    }

    /// Replace every `Var(i)` by `args[i]`.
    pub fn subst(&self, args: &[Expr]) -> Expr {
        match self {
            Const(q) => Const(q.clone()),
            Var(i) => args[*i].clone(),
            Neg(x) => x.subst(args).neg(),
            Add(a, b) => a.subst(args).add(b.subst(args)),
            Sub(a, b) => a.subst(args).sub(b.subst(args)),
            Mul(a, b) => a.subst(args).mul(b.subst(args)),
            Div(a, b) => a.subst(args).div(b.subst(args)),
            Pow(x, r) => x.subst(args).pow(r.clone()),
            Apply(f, x) => Expr::apply(*f, x.subst(args)),
        }
    }

    /// Renumber variables `i ↦ i + k`.
    pub fn shift_vars(&self, k: usize) -> Expr {
        let args: Vec<Expr> = (0..self.arity()).map(|i| Var(i + k)).collect();
        self.subst(&args)
    }

    /// Symbolic partial derivative in variable `i`.
    pub fn diff(&self, i: usize) -> Expr {
        match self {
            Const(_) => Expr::int(0),
            Var(j) => Expr::int(i64::from(*j == i)),
            Neg(x) => x.diff(i).neg(),
            Add(a, b) => a.diff(i).add(b.diff(i)),
            Sub(a, b) => a.diff(i).sub(b.diff(i)),
            Mul(a, b) => a
                .diff(i)
                .mul((**b).clone())
                .add((**a).clone().mul(b.diff(i))),
            Div(a, b) => {
                let num = a
                    .diff(i)
                    .mul((**b).clone())
                    .sub((**a).clone().mul(b.diff(i)));
                num.div((**b).clone().pow(int(2)))
            }
            Pow(x, r) => Const(r.clone())
                .mul((**x).clone().pow(r - BigRational::one()))
                .mul(x.diff(i)),
            Apply(f, x) => derivative_of(*f, (**x).clone()).mul(x.diff(i)),
        }
    }

    pub fn eval_f64(&self, args: &[f64]) -> f64 {
        match self {
            Const(q) => rational_to_f64(q),
            Var(i) => args[*i],
            Neg(x) => -x.eval_f64(args),
            Add(a, b) => a.eval_f64(args) + b.eval_f64(args),
            Sub(a, b) => a.eval_f64(args) - b.eval_f64(args),
            Mul(a, b) => a.eval_f64(args) * b.eval_f64(args),
            Div(a, b) => a.eval_f64(args) / b.eval_f64(args),
            Pow(x, r) => real_pow(x.eval_f64(args), r),
            Apply(f, x) => f.eval_f64(x.eval_f64(args)),
        }
    }

    /// Exact value in ℚ(t); only field operations and integer powers.
    pub fn eval_ratfunc(&self, args: &[RatFunc]) -> Result<RatFunc, NumcheckError> {
        Ok(match self {
            Const(q) => RatFunc::constant(q.clone()),
            Var(i) => args
                .get(*i)
                .cloned()
                .ok_or(NumcheckError::ArityMismatch { expected: i + 1, got: args.len() })?,
            Neg(x) => x.eval_ratfunc(args)?.neg(),
            Add(a, b) => a.eval_ratfunc(args)?.add(&b.eval_ratfunc(args)?),
            Sub(a, b) => a.eval_ratfunc(args)?.sub(&b.eval_ratfunc(args)?),
            Mul(a, b) => a.eval_ratfunc(args)?.mul(&b.eval_ratfunc(args)?),
            Div(a, b) => a
                .eval_ratfunc(args)?
                .div(&b.eval_ratfunc(args)?)
                .ok_or(NumcheckError::Undefined("division by zero in Q(t)".into()))?,
            Pow(x, r) => {
                if !r.is_integer() {
                    return Err(NumcheckError::NonAlgebraicFunction(format!(
                        "non-integer power {r}"
                    )));
                }
                let k = r.to_i64().ok_or(NumcheckError::Undefined("huge exponent".into()))?;
                x.eval_ratfunc(args)?
                    .powi(k)
                    .ok_or(NumcheckError::Undefined("zero to a negative power".into()))?
            }
            Apply(f, _) => {
                return Err(NumcheckError::NonAlgebraicFunction(f.name().to_string()))
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Add(..) | Sub(..) => 0,
            Mul(..) | Div(..) | Neg(_) => 1,
            Const(q) if q.is_negative() || !q.is_integer() => 1,
            _ => 2,
        }
    }

    fn wrap(&self, level: u8) -> String {
        if self.prec() < level {
            format!("({self})")
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["u", "v", "w"];
        match self {
            Const(q) => write!(f, "{q}"),
            Var(i) => match NAMES.get(*i) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "x{i}"),
            },
            Neg(x) => write!(f, "-{}", x.wrap(2)),
            Add(a, b) => write!(f, "{} + {}", a, b.wrap(1)),
            Sub(a, b) => write!(f, "{} - {}", a, b.wrap(1)),
            Mul(a, b) => write!(f, "{}*{}", a.wrap(1), b.wrap(2)),
            Div(a, b) => write!(f, "{}/{}", a.wrap(1), b.wrap(2)),
            Pow(x, r) if r == &rat(1, 2) => write!(f, "sqrt({x})"),
            Pow(x, r) => {
                if r.is_integer() && !r.is_negative() {
                    write!(f, "{}^{}", x.wrap(2), r)
                } else {
                    write!(f, "{}^({})", x.wrap(2), r)
                }
            }
            Apply(g, x) => write!(f, "{}({})", g.name(), x),
        }
    }
}

/// `x^r` over the reals: odd denominators extend to negative bases.
pub fn real_pow(x: f64, r: &BigRational) -> f64 {
    if let Some(k) = r.to_i32().filter(|_| r.is_integer()) {
        return x.powi(k);
    }
    let e = rational_to_f64(r);
    if x < 0.0 && r.denom() % 2u32 == 1u32.into() {
        let m = (-x).powf(e);
        if r.numer() % 2u32 == 0u32.into() {
            m
        } else {
            -m
        }
    } else {
        x.powf(e)
    }
}

/// `f'(x)` as an expression in `x`.
pub fn derivative_of(f: Elementary, x: Expr) -> Expr {
    use Elementary::*;
    let one = || Expr::int(1);
    let sq = |e: Expr| e.pow(int(2));
    match f {
        Exp => Expr::apply(Exp, x),
        Ln => one().div(x),
        Sinh => Expr::apply(Cosh, x),
        Cosh => Expr::apply(Sinh, x),
        Tanh => one().div(sq(Expr::apply(Cosh, x))),
        Coth => one().div(sq(Expr::apply(Sinh, x))).neg(),
        Sin => Expr::apply(Cos, x),
        Cos => Expr::apply(Sin, x).neg(),
        Tan => one().div(sq(Expr::apply(Cos, x))),
        Cot => one().div(sq(Expr::apply(Sin, x))).neg(),
        Asinh => one().add(sq(x)).pow(rat(-1, 2)),
        Acosh => sq(x).sub(one()).pow(rat(-1, 2)),
        Atanh | Acoth => one().div(one().sub(sq(x))),
        Asin => one().sub(sq(x)).pow(rat(-1, 2)),
        Acos => one().sub(sq(x)).pow(rat(-1, 2)).neg(),
        Atan => one().div(one().add(sq(x))),
        Acot => one().div(one().add(sq(x))).neg(),
    }
}

fn u() -> Expr {
    Var(0)
}

fn v() -> Expr {
    Var(1)
}

fn sq(e: Expr) -> Expr {
    e.pow(int(2))
}

/// `g(u, v)` of the addition law.
pub fn law_expr(law: Law) -> Expr {
    let one = || Expr::int(1);
    match law {
        Law::Exp => u().mul(v()),
        Law::Sinh => u()
            .mul(one().add(sq(v())).sqrt())
            .add(v().mul(one().add(sq(u())).sqrt())),
        Law::Cosh => u()
            .mul(v())
            .add(sq(u()).sub(one()).sqrt().mul(sq(v()).sub(one()).sqrt())),
        Law::Tanh => u().add(v()).div(one().add(u().mul(v()))),
        Law::Coth => u().mul(v()).add(one()).div(u().add(v())),
        Law::Sin => u()
            .mul(one().sub(sq(v())).sqrt())
            .add(v().mul(one().sub(sq(u())).sqrt())),
        Law::Cos => u()
            .mul(v())
            .sub(one().sub(sq(u())).sqrt().mul(one().sub(sq(v())).sqrt())),
        Law::Tan => u().add(v()).div(one().sub(u().mul(v()))),
        Law::Cot => u().mul(v()).sub(one()).div(u().add(v())),
    }
}

/// The coefficient pair `(B, C)` in `d(g(u,v)) = B·d(u) + C·d(v)` exactly as
/// written in the hand derivation of each case (not obtained by `diff`).
pub fn law_coefficients(law: Law) -> (Expr, Expr) {
    let one = || Expr::int(1);
    let r1u = || one().add(sq(u())).sqrt();
    let r1v = || one().add(sq(v())).sqrt();
    let c1u = || sq(u()).sub(one()).sqrt();
    let c1v = || sq(v()).sub(one()).sqrt();
    let s1u = || one().sub(sq(u())).sqrt();
    let s1v = || one().sub(sq(v())).sqrt();
    match law {
        Law::Exp => (v(), u()),
        Law::Sinh => (
            r1v().add(v().mul(u().div(r1u()))),
            r1u().add(u().mul(v().div(r1v()))),
        ),
        Law::Cosh => (
            v().add(u().mul(c1v().div(c1u()))),
            u().add(v().mul(c1u().div(c1v()))),
        ),
        Law::Tanh => {
            let den = || sq(one().add(u().mul(v())));
            (one().sub(sq(v())).div(den()), one().sub(sq(u())).div(den()))
        }
        Law::Coth => {
            let den = || sq(u().add(v()));
            (sq(v()).sub(one()).div(den()), sq(u()).sub(one()).div(den()))
        }
        Law::Sin => (
            s1v().sub(v().mul(u().div(s1u()))),
            s1u().sub(u().mul(v().div(s1v()))),
        ),
        Law::Cos => (
            v().add(u().mul(s1v().div(s1u()))),
            u().add(v().mul(s1u().div(s1v()))),
        ),
        Law::Tan => {
            let den = || sq(one().sub(u().mul(v())));
            (one().add(sq(v())).div(den()), one().add(sq(u())).div(den()))
        }
        Law::Cot => {
            let den = || sq(u().add(v()));
            (one().add(sq(v())).div(den()), one().add(sq(u())).div(den()))
        }
    }
}
