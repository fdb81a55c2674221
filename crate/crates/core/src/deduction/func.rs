//! The function catalog of the fact language, with arity, natural domains
//! and monotone images.

use std::cmp::Ordering;
use std::fmt;

use num::integer::Integer;
use num::traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::domain::{DBox, Domain, Endpoint, Iv};
use super::DeductionError;
use crate::certified::{self, default_precision, RatInterval};
use crate::elementary::{Elementary, Law};
use crate::exactnum::{format_rational, int, parse_rational, rat, BigRational};
use crate::laurent::{formal_derivative, nonvanishing_on, LaurentPoly};
use crate::numcheck::expr::{law_expr, Expr};
use crate::numcheck::identities::symmetrized;
use crate::symreal::SymReal;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Id,
    Const(BigRational),
    Elem(Elementary),
    Power(BigRational),
    Laurent(LaurentPoly),
    Add,
    Mul,
    Div,
    /// Two-variable addition law `g` of a catalog function.
    Law(Law),
    /// `u·√(1+v²)` or `u·√(1−v²)`: the law after combining `v` and `−v`.
    Sym(Law),
    /// `outer ∘ inner`.
    Compose(Box<Func>, Box<Func>),
    /// Componentwise product map acting on consecutive variable blocks.
    Tuple(Vec<Func>),
}

impl Func {
    pub fn compose(inner: Func, outer: Func) -> Func {
        Func::Compose(Box::new(inner), Box::new(outer))
    }

    /// `x ↦ √(1+x²)` (sinh) or `x ↦ √(1−x²)` (sin).
    pub fn companion_root(l: Law) -> Func {
        let sign = if l == Law::Sin { -1 } else { 1 };
        Func::compose(
            Func::Laurent(LaurentPoly::from_ints(&[(0, 1), (2, sign)])),
            Func::Power(rat(1, 2)),
        )
    }

    /// `(inputs, outputs)`.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Func::Id | Func::Const(_) | Func::Elem(_) | Func::Power(_) | Func::Laurent(_) => (1, 1),
            Func::Add | Func::Mul | Func::Div | Func::Law(_) | Func::Sym(_) => (2, 1),
            Func::Compose(inner, outer) => (inner.arity().0, outer.arity().1),
            Func::Tuple(items) => items.iter().fold((0, 0), |(n, m), f| {
                let (a, b) = f.arity();
                (n + a, m + b)
            }),
        }
    }

    /// Arity consistency of nested composites.
    pub fn check_arity(&self) -> Result<(), DeductionError> {
        match self {
            Func::Compose(inner, outer) => {
                inner.check_arity()?;
                outer.check_arity()?;
                if inner.arity().1 != outer.arity().0 {
                    return Err(DeductionError::ArityMismatch(format!(
                        "{inner} has {} outputs but {outer} takes {} inputs",
                        inner.arity().1,
                        outer.arity().0
                    )));
                }
                Ok(())
            }
            Func::Tuple(items) => {
                if items.is_empty() {
                    return Err(DeductionError::ArityMismatch("empty tuple".into()));
                }
                items.iter().try_for_each(Func::check_arity)
            }
            Func::Power(r) if r.is_zero() => Err(DeductionError::BadExponent("0".into())),
            _ => Ok(()),
        }
    }

    /// Components as expressions in variables `0..n`.
    pub fn to_exprs(&self) -> Vec<Expr> {
        let x = || Expr::var(0);
        match self {
            Func::Id => vec![x()],
            Func::Const(c) => vec![Expr::c(c.clone())],
            Func::Elem(f) => vec![Expr::apply(*f, x())],
            Func::Power(r) => vec![x().pow(r.clone())],
            Func::Laurent(p) => {
                let e = p.terms().fold(Expr::int(0), |acc, (k, c)| {
                    acc.add(Expr::c(c.clone()).mul(x().pow(int(k))))
                });
                vec![e]
            }
            Func::Add => vec![x().add(Expr::var(1))],
            Func::Mul => vec![x().mul(Expr::var(1))],
            Func::Div => vec![x().div(Expr::var(1))],
            Func::Law(l) => vec![law_expr(*l)],
            Func::Sym(l) => vec![symmetrized(*l).map(|t| t.0).unwrap_or_else(|| law_expr(*l))],
            Func::Compose(inner, outer) => {
                let args = inner.to_exprs();
                outer.to_exprs().iter().map(|e| e.subst(&args)).collect()
            }
            Func::Tuple(items) => {
                let mut out = Vec::new();
                let mut shift = 0;
                for f in items {
                    out.extend(f.to_exprs().iter().map(|e| e.shift_vars(shift)));
                    shift += f.arity().0;
                }
                out
            }
        }
    }

    /// Whether the function is defined and differentiable on the open box.
    pub fn check_box(&self, b: &DBox) -> Result<bool, DeductionError> {
        if b.dim() != self.arity().0 {
            return Ok(false);
        }
        match self {
            Func::Id | Func::Const(_) | Func::Add | Func::Mul => Ok(true),
            Func::Elem(_) | Func::Power(_) => {
                for piece in self.natural_pieces() {
                    if b.0[0].subset_of(&piece)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Func::Laurent(p) => Ok(!p.has_negative_exponents() || !b.0[0].contains_zero()?),
            Func::Div => Ok(!b.0[1].contains_zero()?),
            Func::Law(l) | Func::Sym(l) => law_box_ok(*l, b, matches!(self, Func::Sym(_))),
            Func::Compose(inner, outer) => {
                if !inner.check_box(b)? {
                    return Ok(false);
                }
                if let Ok(img) = inner.image_box(b) {
                    return outer.check_box(&img);
                }
                // fall back to a certified enclosure of the inner range
                match (inner.arity(), b.0[0].enclosure()?) {
                    ((1, 1), Some(x)) => match inner.range(&x)? {
                        // a constant's range is a point: test a small neighbourhood
                        Some(r) if r.is_point() => {
                            let eps = rat(1, 1 << 40);
                            let nb = Iv::rational(r.lo() - &eps, r.hi() + &eps)?;
                            outer.check_box(&DBox(vec![nb]))
                        }
                        Some(r) => match Iv::rational(r.lo().clone(), r.hi().clone()) {
                            Ok(hull) => outer.check_box(&DBox(vec![hull.with_closed(true, true)])),
                            Err(_) => Ok(false),
                        },
                        None => Ok(false),
                    },
                    _ => Ok(false),
                }
            }
            Func::Tuple(items) => {
                let mut k = 0;
                for f in items {
                    let n = f.arity().0;
                    if !f.check_box(&DBox(b.0[k..k + n].to_vec()))? {
                        return Ok(false);
                    }
                    k += n;
                }
                Ok(true)
            }
        }
    }

    /// Errors unless every box of `d` lies in the natural domain.
    pub fn check_domain(&self, d: &Domain) -> Result<(), DeductionError> {
        self.check_arity()?;
        for b in &d.0 {
            if b.dim() != self.arity().0 {
                return Err(DeductionError::ArityMismatch(format!(
                    "{self} takes {} inputs but the domain {d} has dimension {}",
                    self.arity().0,
                    b.dim()
                )));
            }
            if !self.check_box(&b.interior())? {
                return Err(DeductionError::DomainOutsideFunction {
                    func: self.to_string(),
                    domain: d.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Open intervals whose union is the natural (differentiable) domain of a
    /// one-variable catalog entry.
    fn natural_pieces(&self) -> Vec<Iv> {
        let pi = |q: BigRational| Endpoint::At(SymReal::pi_times(q));
        let iv = |lo: Endpoint, hi: Endpoint| Iv::open(lo, hi).expect("catalog piece");
        let n = |k: i64| Endpoint::int(k);
        use Elementary::*;
        use Endpoint::{NegInf, PosInf};
        match self {
            Func::Power(r) => {
                let odd_den = r.denom().is_odd();
                if odd_den && (r >= &BigRational::one() || (r.is_integer() && !r.is_negative())) {
                    vec![Iv::real_line()]
                } else if odd_den {
                    vec![iv(NegInf, n(0)), iv(n(0), PosInf)]
                } else {
                    vec![iv(n(0), PosInf)]
                }
            }
            Func::Elem(f) => match f {
                Exp | Sinh | Cosh | Tanh | Sin | Cos | Asinh | Atan | Acot => vec![Iv::real_line()],
                Ln => vec![iv(n(0), PosInf)],
                Coth => vec![iv(NegInf, n(0)), iv(n(0), PosInf)],
                Tan => vec![
                    iv(pi(rat(-3, 2)), pi(rat(-1, 2))),
                    iv(pi(rat(-1, 2)), pi(rat(1, 2))),
                    iv(pi(rat(1, 2)), pi(rat(3, 2))),
                ],
                Cot => vec![
                    iv(pi(int(-1)), n(0)),
                    iv(n(0), pi(int(1))),
                    iv(pi(int(1)), pi(int(2))),
                ],
                Acosh => vec![iv(n(1), PosInf)],
                Atanh | Asin | Acos => vec![iv(n(-1), n(1))],
                Acoth => vec![iv(NegInf, n(-1)), iv(n(1), PosInf)],
            },
            _ => vec![],
        }
    }

    /// Image of an open box; each component must be strictly monotone.
    pub fn image_box(&self, b: &DBox) -> Result<DBox, DeductionError> {
        match self {
            Func::Tuple(items) => {
                let mut out = Vec::new();
                let mut k = 0;
                for f in items {
                    let n = f.arity().0;
                    out.extend(f.image_box(&DBox(b.0[k..k + n].to_vec()))?.0);
                    k += n;
                }
                Ok(DBox(out))
            }
            Func::Compose(inner, outer) => outer.image_box(&inner.image_box(b)?),
            f if f.arity() == (1, 1) && b.dim() == 1 => Ok(DBox(vec![f.image(&b.0[0])?.0])),
            f => Err(DeductionError::ImageNotComputable(format!("{f} on {b}"))),
        }
    }

    /// Image of an open interval under a strictly monotone one-variable
    /// function, with the direction (`true` for increasing).
    pub fn image(&self, iv: &Iv) -> Result<(Iv, bool), DeductionError> {
        let iv = iv.interior();
        match self {
            Func::Id => Ok((iv, true)),
            Func::Const(c) => Err(DeductionError::ImageNotOpen(format!("constant {}", format_rational(c)))),
            Func::Elem(_) | Func::Power(_) => {
                for piece in self.monotone_pieces() {
                    if iv.subset_of(&piece.span.interior())? {
                        return self.piece_image(&piece, &iv);
                    }
                }
                Err(DeductionError::ImageNotOpen(format!(
                    "{self} is not strictly monotone on {iv}"
                )))
            }
            Func::Laurent(p) => laurent_image(p, &iv),
            Func::Compose(inner, outer) => {
                let (mid, up1) = inner.image(&iv)?;
                let (img, up2) = outer.image(&mid)?;
                Ok((img, up1 == up2))
            }
            _ => Err(DeductionError::ImageNotComputable(format!("{self} on {iv}"))),
        }
    }

    fn piece_image(&self, piece: &Piece, iv: &Iv) -> Result<(Iv, bool), DeductionError> {
        let at = |e: &Endpoint, edge: &Endpoint, limit: &Endpoint| -> Result<Endpoint, DeductionError> {
            if e.cmp(edge)? == Ordering::Equal {
                return Ok(limit.clone());
            }
            Ok(match e {
                Endpoint::At(x) => Endpoint::At(self.eval_sym(x)),
                other => other.clone(),
            })
        };
        let a = at(&iv.lo, &piece.span.lo, &piece.at_lo)?;
        let b = at(&iv.hi, &piece.span.hi, &piece.at_hi)?;
        let img = if piece.increasing {
            Iv::open(a, b)?
        } else {
            Iv::open(b, a)?
        };
        Ok((img, piece.increasing))
    }

    /// Certified enclosure of the range over an enclosure of the argument;
    /// `None` where the catalog has no interval extension.
    pub fn range(&self, x: &RatInterval) -> Result<Option<RatInterval>, DeductionError> {
        let prec = default_precision();
        Ok(match self {
            Func::Id => Some(x.clone()),
            Func::Const(c) => Some(RatInterval::point(c.clone())),
            Func::Elem(f) => Some(f.eval_interval(x, prec)?),
            Func::Power(r) => Some(certified::pow_rational(x, r, prec)?),
            Func::Laurent(p) => {
                let mut acc = RatInterval::point(BigRational::zero());
                for (k, c) in p.terms() {
                    match x.powi(k) {
                        Some(t) => acc = acc.add(&t.scale(c)),
                        None => return Ok(None),
                    }
                }
                Some(acc)
            }
            Func::Compose(inner, outer) => match inner.range(x)? {
                Some(y) => outer.range(&y)?,
                None => None,
            },
            _ => None,
        })
    }

    /// Symbolic value at a finite point of the domain.
    pub fn eval_sym(&self, x: &SymReal) -> SymReal {
        match self {
            Func::Id => x.clone(),
            Func::Const(c) => SymReal::rational(c.clone()),
            Func::Elem(f) => SymReal::apply(*f, x),
            Func::Power(r) => x.pow(r),
            Func::Laurent(p) => p.terms().fold(SymReal::int(0), |acc, (k, c)| {
                acc.add(&x.pow(&int(k)).scale(c))
            }),
            Func::Compose(inner, outer) => outer.eval_sym(&inner.eval_sym(x)),
            _ => x.clone(),
        }
    }

    /// Closed monotone pieces with the one-sided limits at their edges.
    fn monotone_pieces(&self) -> Vec<Piece> {
        use Elementary::*;
        use Endpoint::{NegInf, PosInf};
        let n = |k: i64| Endpoint::int(k);
        let pi = |q: BigRational| Endpoint::At(SymReal::pi_times(q));
        let p = |lo: Endpoint, hi: Endpoint, inc: bool, at_lo: Endpoint, at_hi: Endpoint, principal: bool| Piece {
            span: Iv::open(lo, hi).expect("catalog piece"),
            increasing: inc,
            at_lo,
            at_hi,
            principal,
        };
        match self {
            Func::Elem(f) => match f {
                Exp => vec![p(NegInf, PosInf, true, n(0), PosInf, true)],
                Ln => vec![p(n(0), PosInf, true, NegInf, PosInf, true)],
                Sinh => vec![p(NegInf, PosInf, true, NegInf, PosInf, true)],
                Cosh => vec![
                    p(n(0), PosInf, true, n(1), PosInf, true),
                    p(NegInf, n(0), false, PosInf, n(1), false),
                ],
                Tanh => vec![p(NegInf, PosInf, true, n(-1), n(1), true)],
                Coth => vec![
                    p(NegInf, n(0), false, n(-1), NegInf, true),
                    p(n(0), PosInf, false, PosInf, n(1), true),
                ],
                Sin => vec![
                    p(pi(rat(-1, 2)), pi(rat(1, 2)), true, n(-1), n(1), true),
                    p(pi(rat(1, 2)), pi(rat(3, 2)), false, n(1), n(-1), false),
                    p(pi(rat(-3, 2)), pi(rat(-1, 2)), false, n(1), n(-1), false),
                ],
                Cos => vec![
                    p(n(0), pi(int(1)), false, n(1), n(-1), true),
                    p(pi(int(-1)), n(0), true, n(-1), n(1), false),
                ],
                Tan => vec![p(pi(rat(-1, 2)), pi(rat(1, 2)), true, NegInf, PosInf, true)],
                Cot => vec![
                    p(n(0), pi(int(1)), false, PosInf, NegInf, true),
                    p(pi(int(-1)), n(0), false, PosInf, NegInf, false),
                ],
                Asinh => vec![p(NegInf, PosInf, true, NegInf, PosInf, true)],
                Acosh => vec![p(n(1), PosInf, true, n(0), PosInf, true)],
                Atanh => vec![p(n(-1), n(1), true, NegInf, PosInf, true)],
                Acoth => vec![
                    p(NegInf, n(-1), false, n(0), NegInf, true),
                    p(n(1), PosInf, false, PosInf, n(0), true),
                ],
                Asin => vec![p(n(-1), n(1), true, pi(rat(-1, 2)), pi(rat(1, 2)), true)],
                Acos => vec![p(n(-1), n(1), false, pi(int(1)), n(0), true)],
                Atan => vec![p(NegInf, PosInf, true, pi(rat(-1, 2)), pi(rat(1, 2)), true)],
                Acot => vec![p(NegInf, PosInf, false, pi(int(1)), n(0), true)],
            },
            Func::Power(r) if !r.is_zero() => {
                let pos = r.is_positive();
                let odd_den = r.denom().is_odd();
                let odd_num = r.numer().is_odd();
                if pos && odd_den && odd_num {
                    return vec![p(NegInf, PosInf, true, NegInf, PosInf, true)];
                }
                let (at0, at_inf) = if pos { (n(0), PosInf) } else { (PosInf, n(0)) };
                let mut out = vec![p(n(0), PosInf, pos, at0.clone(), at_inf.clone(), true)];
                if odd_den {
                    if odd_num {
                        out.push(p(NegInf, n(0), pos, at_inf.neg(), at0.neg(), true));
                    } else {
                        out.push(p(NegInf, n(0), !pos, at_inf, at0, false));
                    }
                }
                out
            }
            _ => vec![],
        }
    }

    /// The inverse on the piece containing `iv`, with the piece's
    /// monotonicity; `None` when the catalog has no inverse there.
    pub fn inverse_on(&self, iv: &Iv) -> Result<Option<Func>, DeductionError> {
        match self {
            Func::Id => Ok(Some(Func::Id)),
            Func::Elem(f) => {
                for piece in self.monotone_pieces() {
                    if iv.interior().subset_of(&piece.span.interior())? {
                        return Ok(piece.principal.then(|| Func::Elem(f.inverse())));
                    }
                }
                Ok(None)
            }
            Func::Power(r) => {
                if iv.contains_zero()? {
                    return Ok(None);
                }
                let positive = iv.lo.cmp(&Endpoint::int(0))? != Ordering::Less;
                // x^(m/n) on negatives inverts to y^(n/m) only when both are odd
                let ok = positive || (r.numer().is_odd() && r.denom().is_odd());
                Ok(ok.then(|| Func::Power(r.recip())))
            }
            _ => Ok(None),
        }
    }

    /// Whether the derivative vanishes somewhere on the open interval.
    pub fn singular_on(&self, iv: &Iv) -> Result<bool, DeductionError> {
        let iv = iv.interior();
        match self {
            Func::Power(r) => Ok(!r.is_one() && iv.contains_zero()?),
            Func::Elem(_) => {
                for piece in self.monotone_pieces() {
                    if iv.subset_of(&piece.span.interior())? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Func::Laurent(p) => {
                let oi = iv.to_open_interval().ok_or_else(|| {
                    DeductionError::ImageNotComputable(format!("symbolic ends of {iv}"))
                })?;
                Ok(!nonvanishing_on(&formal_derivative(p), &oi)?)
            }
            _ => Ok(false),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Func::Id => json!({"op": "id"}),
            Func::Const(c) => json!({"op": "const", "c": format_rational(c)}),
            Func::Elem(f) => json!({ "op": f.name() }),
            Func::Power(r) => json!({"op": "power", "r": format_rational(r)}),
            Func::Laurent(p) => json!({"op": "laurent", "poly": serde_json::to_value(p).unwrap()}),
            Func::Add => json!({"op": "add"}),
            Func::Mul => json!({"op": "mul"}),
            Func::Div => json!({"op": "div"}),
            Func::Law(l) => json!({ "op": l.op_name() }),
            Func::Sym(l) => json!({ "op": format!("sym-{}", l.function().name()) }),
            Func::Compose(inner, outer) => {
                json!({"op": "compose", "inner": inner.to_json(), "outer": outer.to_json()})
            }
            Func::Tuple(items) => {
                json!({"op": "tuple", "items": items.iter().map(Func::to_json).collect::<Vec<_>>()})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Func, String> {
        let obj = v.as_object().ok_or("function must be an object with an `op` field")?;
        let op = obj
            .get("op")
            .and_then(Value::as_str)
            .ok_or("function is missing the string field `op`")?;
        let allowed: &[&str] = match op {
            "const" => &["c"],
            "power" => &["r"],
            "laurent" => &["poly"],
            "compose" => &["inner", "outer"],
            "tuple" => &["items"],
            _ => &[],
        };
        for key in obj.keys() {
            if key != "op" && !allowed.contains(&key.as_str()) {
                return Err(format!("unknown field `{key}` for op `{op}`"));
            }
        }
        let field = |k: &str| obj.get(k).ok_or_else(|| format!("op `{op}` requires field `{k}`"));
        let rational = |k: &str| -> Result<BigRational, String> {
            let s = field(k)?.as_str().ok_or_else(|| format!("`{k}` must be a rational string"))?;
            parse_rational(s).map_err(|e| e.to_string())
        };
        Ok(match op {
            "id" => Func::Id,
            "const" => Func::Const(rational("c")?),
            "power" => {
                let r = rational("r")?;
                if r.is_zero() {
                    return Err("power exponent must be nonzero".into());
                }
                Func::Power(r)
            }
            "sqrt" => Func::Power(rat(1, 2)),
            "laurent" => Func::Laurent(
                serde_json::from_value(field("poly")?.clone()).map_err(|e| e.to_string())?,
            ),
            "add" => Func::Add,
            "mul" => Func::Mul,
            "div" => Func::Div,
            "compose" => Func::compose(Func::from_json(field("inner")?)?, Func::from_json(field("outer")?)?),
            "tuple" => {
                let items = field("items")?.as_array().ok_or("`items` must be an array")?;
                if items.is_empty() {
                    return Err("`items` must not be empty".into());
                }
                Func::Tuple(items.iter().map(Func::from_json).collect::<Result<_, _>>()?)
            }
            s if s.starts_with("g-") => Func::Law(Law::parse(s).ok_or_else(|| format!("unknown law `{s}`"))?),
            s if s.starts_with("sym-") => match Law::parse(&s[4..]) {
                Some(l @ (Law::Sinh | Law::Sin)) => Func::Sym(l),
                _ => return Err(format!("unknown op `{s}`")),
            },
            s => Func::Elem(s.parse::<Elementary>().map_err(|_| {
                format!(
                    "unknown op `{s}` (expected id, const, power, sqrt, laurent, add, mul, div, \
                     compose, tuple, an elementary function name or g-<law>)"
                )
            })?),
        })
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Func::Id => write!(f, "id"),
            Func::Const(c) => write!(f, "const({})", format_rational(c)),
            Func::Elem(e) => write!(f, "{e}"),
            Func::Power(r) => write!(f, "x^{}", format_rational(r)),
            Func::Laurent(p) => write!(f, "laurent({p})"),
            Func::Add => write!(f, "add"),
            Func::Mul => write!(f, "mul"),
            Func::Div => write!(f, "div"),
            Func::Law(l) => write!(f, "{l}"),
            Func::Sym(l) => write!(f, "sym-{}", l.function().name()),
            Func::Compose(inner, outer) => write!(f, "({outer})o({inner})"),
            Func::Tuple(items) => {
                write!(f, "(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Piece {
    span: Iv,
    increasing: bool,
    at_lo: Endpoint,
    at_hi: Endpoint,
    principal: bool,
}

fn laurent_image(p: &LaurentPoly, iv: &Iv) -> Result<(Iv, bool), DeductionError> {
    let oi = iv
        .to_open_interval()
        .ok_or_else(|| DeductionError::ImageNotComputable(format!("symbolic ends of {iv}")))?;
    if p.has_negative_exponents() && oi.contains_zero() {
        return Err(DeductionError::DomainOutsideFunction {
            func: format!("laurent({p})"),
            domain: iv.to_string(),
        });
    }
    let dp = formal_derivative(p);
    if dp.is_zero() || !nonvanishing_on(&dp, &oi)? {
        return Err(DeductionError::ImageNotOpen(format!(
            "laurent({p}) is not strictly monotone on {iv}"
        )));
    }
    let end = |e: &Endpoint, from_above: bool| -> Result<Endpoint, DeductionError> {
        match e {
            Endpoint::NegInf | Endpoint::PosInf => {
                let sgn = if *e == Endpoint::PosInf { 1 } else { -1 };
                Ok(limit_at_infinity(p, sgn))
            }
            Endpoint::At(x) => {
                let q = x.as_rational().ok_or_else(|| {
                    DeductionError::ImageNotComputable(format!("irrational end {x} of {iv}"))
                })?;
                if q.is_zero() && p.has_negative_exponents() {
                    let k = p.min_exponent().unwrap();
                    let c = p.coeff(k);
                    let side_neg = !from_above && k.is_odd();
                    let positive = c.is_positive() != side_neg;
                    return Ok(if positive { Endpoint::PosInf } else { Endpoint::NegInf });
                }
                Ok(Endpoint::rational(p.eval(q).expect("nonzero point")))
            }
        }
    };
    let a = end(&iv.lo, true)?;
    let b = end(&iv.hi, false)?;
    let increasing = a.cmp(&b)? == Ordering::Less;
    let img = if increasing { Iv::open(a, b)? } else { Iv::open(b, a)? };
    Ok((img, increasing))
}

fn limit_at_infinity(p: &LaurentPoly, sgn: i64) -> Endpoint {
    match p.max_exponent() {
        Some(k) if k > 0 => {
            let c = p.coeff(k);
            let flip = sgn < 0 && k.is_odd();
            if c.is_positive() != flip {
                Endpoint::PosInf
            } else {
                Endpoint::NegInf
            }
        }
        _ => Endpoint::rational(p.coeff(0)),
    }
}

/// Sufficient box conditions for a law to be defined and smooth, checked on
/// certified enclosures of the edges.
fn law_box_ok(l: Law, b: &DBox, sym: bool) -> Result<bool, DeductionError> {
    if matches!(l, Law::Exp | Law::Sinh) {
        return Ok(true);
    }
    let prec = default_precision();
    let mut enc = Vec::new();
    for iv in &b.0 {
        let lo = match &iv.lo {
            Endpoint::At(x) => x.enclose(prec)?.lo().clone(),
            _ => return Ok(false),
        };
        let hi = match &iv.hi {
            Endpoint::At(x) => x.enclose(prec)?.hi().clone(),
            _ => return Ok(false),
        };
        enc.push(RatInterval::new(lo, hi));
    }
    let (u, v) = (&enc[0], &enc[1]);
    let one = BigRational::one();
    let sq_below_one = |x: &RatInterval| x.sqr().hi() < &one;
    let sq_above_one = |x: &RatInterval| x.sqr().lo() > &one;
    Ok(match l {
        Law::Exp | Law::Sinh => true,
        Law::Cosh => sq_above_one(u) && sq_above_one(v),
        Law::Sin if sym => sq_below_one(v),
        Law::Sin | Law::Cos => sq_below_one(u) && sq_below_one(v),
        Law::Tanh => !u.mul(v).add_rational(&one).contains_zero(),
        Law::Tan => !u.mul(v).neg().add_rational(&one).contains_zero(),
        Law::Coth | Law::Cot => !u.add(v).contains_zero(),
    })
}

/// "d derivates `func` on `domain`"; `d` is additive throughout.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fact {
    pub func: Func,
    pub domain: Domain,
}

impl Fact {
    pub fn new(func: Func, domain: Domain) -> Result<Fact, DeductionError> {
        func.check_domain(&domain)?;
        Ok(Fact { func, domain })
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("func".into(), self.func.to_json());
        m.insert("domain".into(), self.domain.to_json());
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Fact, String> {
        let obj = v.as_object().ok_or("a fact must be an object {\"func\", \"domain\"}")?;
        for key in obj.keys() {
            if key != "func" && key != "domain" {
                return Err(format!("unknown fact field `{key}`"));
            }
        }
        let func = Func::from_json(obj.get("func").ok_or("fact is missing `func`")?)?;
        let domain = Domain::from_json(obj.get("domain").ok_or("fact is missing `domain`")?)?;
        Fact::new(func, domain).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d derivates {} on {}", self.func, self.domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn riv(a: i64, b: i64) -> Iv {
        Iv::rational(int(a), int(b)).unwrap()
    }

    #[test]
    fn images() {
        let (img, up) = Func::Power(int(2)).image(&riv(1, 2)).unwrap();
        assert_eq!((img, up), (riv(1, 4), true));
        let (img, _) = Func::Elem(Elementary::Exp).image(&Iv::real_line()).unwrap();
        assert_eq!(img, Iv::positive());
        let (img, up) = Func::Power(int(-1)).image(&riv(-2, -1)).unwrap();
        assert_eq!((img, up), (Iv::rational(rat(-1, 1), rat(-1, 2)).unwrap(), false));
        assert!(Func::Power(int(2)).image(&riv(-1, 1)).is_err());
        let p = Func::Laurent(LaurentPoly::from_ints(&[(2, 1), (0, 1)]));
        assert_eq!(p.image(&riv(1, 2)).unwrap().0, riv(2, 5));
        assert!(p.image(&riv(-1, 2)).is_err());
    }

    #[test]
    fn cos_window_image() {
        let l = SymReal::rational(rat(1, 8));
        let c = SymReal::pi_times(rat(1, 2));
        let iv = Iv::sym(c.sub(&l), c.add(&l)).unwrap();
        let (img, up) = Func::Elem(Elementary::Cos).image(&iv).unwrap();
        assert!(!up);
        let s = SymReal::apply(Elementary::Sin, &l);
        assert_eq!(img, Iv::sym(s.neg(), s).unwrap());
    }

    #[test]
    fn natural_domains() {
        let f = Func::Elem(Elementary::Ln);
        assert!(f.check_domain(&Domain::interval(riv(1, 2))).is_ok());
        assert!(f.check_domain(&Domain::interval(riv(-1, 2))).is_err());
        let g = Func::Law(Law::Cosh);
        assert!(g.check_domain(&Domain::square(riv(2, 3))).is_ok());
        assert!(g.check_domain(&Domain::square(riv(0, 3))).is_err());
        let c = Func::compose(Func::Elem(Elementary::Sinh), Func::Power(rat(1, 2)));
        assert!(c.check_domain(&Domain::interval(riv(1, 2))).is_ok());
        assert!(c.check_domain(&Domain::interval(riv(-1, 2))).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = Func::compose(
            Func::Tuple(vec![Func::Elem(Elementary::Sinh), Func::Elem(Elementary::Sinh)]),
            Func::Law(Law::Sinh),
        );
        assert_eq!(Func::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(Func::from_json(&json!({"op": "sqrt"})).unwrap(), Func::Power(rat(1, 2)));
        assert!(Func::from_json(&json!({"op": "cosine"})).is_err());
        assert!(Func::from_json(&json!({"op": "power", "r": "0"})).is_err());
    }
}
