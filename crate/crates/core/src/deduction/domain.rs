//! Fact domains: finite unions of boxes whose edges are intervals with
//! symbolic endpoints and per-edge open/closed flags.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Map, Value};

use super::symparse::parse_symreal;
use crate::certified::{default_precision, RatInterval};
use super::DeductionError;
use crate::exactnum::{format_rational, BigRational, Bound, OpenInterval};
use crate::symreal::{compare, SymReal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    NegInf,
    PosInf,
    At(SymReal),
}

impl Endpoint {
    pub fn rational(q: BigRational) -> Self {
        Endpoint::At(SymReal::rational(q))
    }

    pub fn int(n: i64) -> Self {
        Endpoint::At(SymReal::int(n))
    }

    pub fn finite(&self) -> Option<&SymReal> {
        match self {
            Endpoint::At(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.finite().and_then(|x| x.as_rational())
    }

    pub fn neg(&self) -> Self {
        match self {
            Endpoint::NegInf => Endpoint::PosInf,
            Endpoint::PosInf => Endpoint::NegInf,
            Endpoint::At(x) => Endpoint::At(x.neg()),
        }
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        use Endpoint::*;
        match (self, other) {
            (At(a), At(b)) => Some(At(a.add(b))),
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            _ => Some(PosInf),
        }
    }

    pub fn cmp(&self, other: &Self) -> Result<Ordering, DeductionError> {
        use Endpoint::*;
        Ok(match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (At(a), At(b)) => compare(a, b)?,
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Endpoint::NegInf => json!("-inf"),
            Endpoint::PosInf => json!("+inf"),
            Endpoint::At(x) => match x.as_rational() {
                Some(q) => json!(format_rational(q)),
                None => json!(x.to_string()),
            },
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => match s.trim() {
                "-inf" => Ok(Endpoint::NegInf),
                "+inf" | "inf" => Ok(Endpoint::PosInf),
                t => parse_symreal(t).map(Endpoint::At),
            },
            Value::Number(n) => n
                .as_i64()
                .map(Endpoint::int)
                .ok_or_else(|| format!("endpoint {n} must be an integer or a string")),
            Value::Object(_) => {
                let q: crate::exactnum::QuadraticNumber =
                    serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
                Ok(Endpoint::At(SymReal::Exact(q)))
            }
            _ => Err(format!("invalid endpoint {v}")),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::PosInf => write!(f, "+inf"),
            Endpoint::At(x) => write!(f, "{x}"),
        }
    }
}

/// One edge of a box.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Iv {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Iv {
    /// Open interval `]lo, hi[`, checked nonempty.
    pub fn open(lo: Endpoint, hi: Endpoint) -> Result<Self, DeductionError> {
        if lo.cmp(&hi)? != Ordering::Less {
            return Err(DeductionError::EmptyDomain(format!("]{lo}, {hi}[")));
        }
        Ok(Iv {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        })
    }

    pub fn sym(lo: SymReal, hi: SymReal) -> Result<Self, DeductionError> {
        Self::open(Endpoint::At(lo), Endpoint::At(hi))
    }

    pub fn rational(lo: BigRational, hi: BigRational) -> Result<Self, DeductionError> {
        Self::open(Endpoint::rational(lo), Endpoint::rational(hi))
    }

    pub fn real_line() -> Self {
        Iv {
            lo: Endpoint::NegInf,
            hi: Endpoint::PosInf,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn positive() -> Self {
        Iv {
            lo: Endpoint::int(0),
            hi: Endpoint::PosInf,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn with_closed(mut self, lo_closed: bool, hi_closed: bool) -> Self {
        self.lo_closed = lo_closed && self.lo.finite().is_some();
        self.hi_closed = hi_closed && self.hi.finite().is_some();
        self
    }

    pub fn interior(&self) -> Self {
        Iv {
            lo_closed: false,
            hi_closed: false,
            ..self.clone()
        }
    }

    pub fn is_open(&self) -> bool {
        !self.lo_closed && !self.hi_closed
    }

    pub fn neg(&self) -> Self {
        Iv {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    /// `self ⊆ other`.
    pub fn subset_of(&self, other: &Iv) -> Result<bool, DeductionError> {
        let lo_ok = match other.lo.cmp(&self.lo)? {
            Ordering::Less => true,
            Ordering::Equal => other.lo_closed || !self.lo_closed,
            Ordering::Greater => false,
        };
        if !lo_ok {
            return Ok(false);
        }
        Ok(match self.hi.cmp(&other.hi)? {
            Ordering::Less => true,
            Ordering::Equal => other.hi_closed || !self.hi_closed,
            Ordering::Greater => false,
        })
    }

    /// Whether the point lies in the interval (closed flags honored).
    pub fn contains(&self, x: &SymReal) -> Result<bool, DeductionError> {
        let p = Endpoint::At(x.clone());
        let lo_ok = match self.lo.cmp(&p)? {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        Ok(lo_ok
            && match p.cmp(&self.hi)? {
                Ordering::Less => true,
                Ordering::Equal => self.hi_closed,
                Ordering::Greater => false,
            })
    }

    pub fn contains_rational(&self, q: &BigRational) -> Result<bool, DeductionError> {
        self.contains(&SymReal::rational(q.clone()))
    }

    pub fn contains_zero(&self) -> Result<bool, DeductionError> {
        self.contains(&SymReal::int(0))
    }

    /// Intersection of the interiors, `None` when empty.
    pub fn intersect(&self, other: &Iv) -> Result<Option<Iv>, DeductionError> {
        let lo = if self.lo.cmp(&other.lo)? == Ordering::Less {
            other.lo.clone()
        } else {
            self.lo.clone()
        };
        let hi = if self.hi.cmp(&other.hi)? == Ordering::Greater {
            other.hi.clone()
        } else {
            self.hi.clone()
        };
        if lo.cmp(&hi)? != Ordering::Less {
            return Ok(None);
        }
        Ok(Some(Iv {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }))
    }

    /// Minkowski sum of the interiors.
    pub fn sum(&self, other: &Iv) -> Iv {
        Iv {
            lo: self.lo.add(&other.lo).unwrap_or(Endpoint::NegInf),
            hi: self.hi.add(&other.hi).unwrap_or(Endpoint::PosInf),
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// Exact interval, when both ends are surds or infinite.
    pub fn to_open_interval(&self) -> Option<OpenInterval> {
        let b = |e: &Endpoint, neg: Bound| match e {
            Endpoint::At(x) => x.as_exact().map(|q| Bound::Finite(q.clone())),
            _ => Some(neg),
        };
        OpenInterval::new(b(&self.lo, Bound::NegInf)?, b(&self.hi, Bound::PosInf)?).ok()
    }

    /// Certified rational enclosure of a finite interval.
    pub fn enclosure(&self) -> Result<Option<RatInterval>, DeductionError> {
        let prec = default_precision();
        match (&self.lo, &self.hi) {
            (Endpoint::At(a), Endpoint::At(b)) => Ok(Some(RatInterval::new(
                a.enclose(prec)?.lo().clone(),
                b.enclose(prec)?.hi().clone(),
            ))),
            _ => Ok(None),
        }
    }

    pub fn is_real_line(&self) -> bool {
        self.lo == Endpoint::NegInf && self.hi == Endpoint::PosInf
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("lo".into(), self.lo.to_json());
        m.insert("hi".into(), self.hi.to_json());
        if self.lo_closed {
            m.insert("lo_closed".into(), json!(true));
        }
        if self.hi_closed {
            m.insert("hi_closed".into(), json!(true));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        let obj = v.as_object().ok_or("interval must be an object {\"lo\", \"hi\"}")?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "lo" | "hi" | "lo_closed" | "hi_closed") {
                return Err(format!("unknown interval field `{key}`"));
            }
        }
        let lo = Endpoint::from_json(obj.get("lo").ok_or("interval is missing `lo`")?)?;
        let hi = Endpoint::from_json(obj.get("hi").ok_or("interval is missing `hi`")?)?;
        let flag = |k: &str| -> Result<bool, String> {
            match obj.get(k) {
                None => Ok(false),
                Some(Value::Bool(b)) => Ok(*b),
                Some(_) => Err(format!("`{k}` must be a boolean")),
            }
        };
        let iv = Iv::open(lo, hi).map_err(|e| e.to_string())?;
        Ok(iv.with_closed(flag("lo_closed")?, flag("hi_closed")?))
    }
}

impl fmt::Display for Iv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { ']' };
        let r = if self.hi_closed { ']' } else { '[' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Product of intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DBox(pub Vec<Iv>);

impl DBox {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn interior(&self) -> DBox {
        DBox(self.0.iter().map(Iv::interior).collect())
    }

    pub fn subset_of(&self, other: &DBox) -> Result<bool, DeductionError> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.subset_of(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &DBox) -> Result<Option<DBox>, DeductionError> {
        if self.dim() != other.dim() {
            return Ok(None);
        }
        let mut out = Vec::new();
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.intersect(b)? {
                Some(c) => out.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(DBox(out)))
    }

    fn to_json(&self) -> Value {
        if self.dim() == 1 {
            self.0[0].to_json()
        } else {
            Value::Array(self.0.iter().map(Iv::to_json).collect())
        }
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Array(items) if !items.is_empty() => {
                Ok(DBox(items.iter().map(Iv::from_json).collect::<Result<_, _>>()?))
            }
            Value::Array(_) => Err("a box needs at least one interval".into()),
            _ => Ok(DBox(vec![Iv::from_json(v)?])),
        }
    }
}

impl fmt::Display for DBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Finite union of boxes of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain(pub Vec<DBox>);

impl Domain {
    pub fn interval(iv: Iv) -> Self {
        Domain(vec![DBox(vec![iv])])
    }

    pub fn from_box(b: DBox) -> Self {
        Domain(vec![b])
    }

    pub fn square(iv: Iv) -> Self {
        Domain(vec![DBox(vec![iv.clone(), iv])])
    }

    pub fn real_line() -> Self {
        Self::interval(Iv::real_line())
    }

    pub fn plane() -> Self {
        Self::square(Iv::real_line())
    }

    pub fn dim(&self) -> usize {
        self.0.first().map_or(0, DBox::dim)
    }

    /// The interval of a one-box, one-dimensional domain.
    pub fn single_interval(&self) -> Option<&Iv> {
        match self.0.as_slice() {
            [b] if b.dim() == 1 => Some(&b.0[0]),
            _ => None,
        }
    }

    pub fn single_box(&self) -> Option<&DBox> {
        match self.0.as_slice() {
            [b] => Some(b),
            _ => None,
        }
    }

    /// Every box lies inside some box of `other` (sufficient for inclusion).
    pub fn subset_of(&self, other: &Domain) -> Result<bool, DeductionError> {
        for b in &self.0 {
            let mut inside = false;
            for o in &other.0 {
                if b.subset_of(o)? {
                    inside = true;
                    break;
                }
            }
            if !inside {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        match self.0.as_slice() {
            [b] => b.to_json(),
            boxes => json!({ "union": boxes.iter().map(DBox::to_json).collect::<Vec<_>>() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        if let Some(u) = v.as_object().and_then(|o| o.get("union")) {
            let items = u.as_array().ok_or("`union` must be an array of boxes")?;
            if items.is_empty() {
                return Err("`union` must not be empty".into());
            }
            let boxes: Vec<DBox> = items.iter().map(DBox::from_json).collect::<Result<_, _>>()?;
            let d = boxes[0].dim();
            if boxes.iter().any(|b| b.dim() != d) {
                return Err("all boxes of a union must have the same dimension".into());
            }
            return Ok(Domain(boxes));
        }
        Ok(Domain(vec![DBox::from_json(v)?]))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn containment_with_flags() {
        let a = Iv::rational(int(1), int(2)).unwrap();
        let b = Iv::rational(int(1), int(3)).unwrap();
        assert!(a.subset_of(&b).unwrap());
        assert!(!b.subset_of(&a).unwrap());
        let closed = a.clone().with_closed(true, false);
        assert!(!closed.subset_of(&b).unwrap());
        assert!(a.subset_of(&closed).unwrap());
        assert!(Iv::rational(int(1), int(1)).is_err());
    }

    #[test]
    fn symbolic_ends() {
        let pi = Iv::sym(SymReal::int(3), SymReal::pi()).unwrap();
        assert!(pi.contains_rational(&rat(314, 100)).unwrap());
        assert!(!pi.contains_rational(&rat(315, 100)).unwrap());
        let s = pi.sum(&pi);
        assert_eq!(s.hi, Endpoint::At(SymReal::pi().add(&SymReal::pi())));
    }

    #[test]
    fn json_round_trip() {
        let d = Domain(vec![
            DBox(vec![Iv::open(Endpoint::NegInf, Endpoint::int(0)).unwrap()]),
            DBox(vec![Iv::open(Endpoint::int(0), Endpoint::PosInf).unwrap()]),
        ]);
        let js = d.to_json();
        assert_eq!(Domain::from_json(&js).unwrap(), d);
        let sq = Domain::square(Iv::sym(SymReal::int(-1), SymReal::pi()).unwrap().with_closed(true, false));
        assert_eq!(Domain::from_json(&sq.to_json()).unwrap(), sq);
    }
}
