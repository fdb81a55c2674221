//! The catalog of one-variable elementary functions shared by the symbolic
//! endpoints, the fact language, and the identity oracle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certified::{self, CertError, RatInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Elementary {
    Exp,
    Ln,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Sin,
    Cos,
    Tan,
    Cot,
    Asinh,
    Acosh,
    Atanh,
    Acoth,
    Asin,
    Acos,
    Atan,
    Acot,
}

use Elementary::*;

pub const ALL: [Elementary; 18] = [
    Exp, Ln, Sinh, Cosh, Tanh, Coth, Sin, Cos, Tan, Cot, Asinh, Acosh, Atanh, Acoth, Asin, Acos,
    Atan, Acot,
];

/// Parity under `x ↦ −x`, where the function is defined symmetrically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Neither,
}

impl Elementary {
    pub fn name(self) -> &'static str {
        match self {
            Exp => "exp",
            Ln => "ln",
            Sinh => "sinh",
            Cosh => "cosh",
            Tanh => "tanh",
            Coth => "coth",
            Sin => "sin",
            Cos => "cos",
            Tan => "tan",
            Cot => "cot",
            Asinh => "asinh",
            Acosh => "acosh",
            Atanh => "atanh",
            Acoth => "acoth",
            Asin => "asin",
            Acos => "acos",
            Atan => "atan",
            Acot => "acot",
        }
    }

    /// Principal inverse. `cosh`, `sin`, `cos`, `tan`, `cot` are inverted on
    /// their principal branches only; callers check the branch.
    pub fn inverse(self) -> Elementary {
        match self {
            Exp => Ln,
            Ln => Exp,
            Sinh => Asinh,
            Asinh => Sinh,
            Cosh => Acosh,
            Acosh => Cosh,
            Tanh => Atanh,
            Atanh => Tanh,
            Coth => Acoth,
            Acoth => Coth,
            Sin => Asin,
            Asin => Sin,
            Cos => Acos,
            Acos => Cos,
            Tan => Atan,
            Atan => Tan,
            Cot => Acot,
            Acot => Cot,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Sinh | Tanh | Coth | Sin | Tan | Cot | Asinh | Atanh | Acoth | Asin | Atan => {
                Parity::Odd
            }
            Cosh | Cos => Parity::Even,
            _ => Parity::Neither,
        }
    }

    pub fn is_periodic(self) -> bool {
        matches!(self, Sin | Cos | Tan | Cot)
    }

    pub fn eval_f64(self, x: f64) -> f64 {
        match self {
            Exp => x.exp(),
            Ln => x.ln(),
            Sinh => x.sinh(),
            Cosh => x.cosh(),
            Tanh => x.tanh(),
            Coth => 1.0 / x.tanh(),
            Sin => x.sin(),
            Cos => x.cos(),
            Tan => x.tan(),
            Cot => 1.0 / x.tan(),
            Asinh => x.asinh(),
            Acosh => x.acosh(),
            Atanh => x.atanh(),
            Acoth => (1.0 / x).atanh(),
            Asin => x.asin(),
            Acos => x.acos(),
            Atan => x.atan(),
            Acot => std::f64::consts::FRAC_PI_2 - x.atan(),
        }
    }

    /// Derivative evaluated in floating point.
    pub fn derivative_f64(self, x: f64) -> f64 {
        match self {
            Exp => x.exp(),
            Ln => 1.0 / x,
            Sinh => x.cosh(),
            Cosh => x.sinh(),
            Tanh => 1.0 / (x.cosh() * x.cosh()),
            Coth => -1.0 / (x.sinh() * x.sinh()),
            Sin => x.cos(),
            Cos => -x.sin(),
            Tan => 1.0 / (x.cos() * x.cos()),
            Cot => -1.0 / (x.sin() * x.sin()),
            Asinh => 1.0 / (1.0 + x * x).sqrt(),
            Acosh => 1.0 / (x * x - 1.0).sqrt(),
            Atanh | Acoth => 1.0 / (1.0 - x * x),
            Asin => 1.0 / (1.0 - x * x).sqrt(),
            Acos => -1.0 / (1.0 - x * x).sqrt(),
            Atan => 1.0 / (1.0 + x * x),
            Acot => -1.0 / (1.0 + x * x),
        }
    }

    /// Certified enclosure of the image of `x`.
    pub fn eval_interval(self, x: &RatInterval, prec: u32) -> Result<RatInterval, CertError> {
        match self {
            Exp => Ok(certified::exp(x, prec)),
            Ln => certified::ln(x, prec),
            Sinh => Ok(certified::sinh(x, prec)),
            Cosh => Ok(certified::cosh(x, prec)),
            Tanh => Ok(certified::tanh(x, prec)),
            Coth => certified::coth(x, prec),
            Sin => Ok(certified::sin(x, prec)),
            Cos => Ok(certified::cos(x, prec)),
            Tan => certified::tan(x, prec),
            Cot => certified::cot(x, prec),
            Asinh => certified::asinh(x, prec),
            Acosh => certified::acosh(x, prec),
            Atanh => certified::atanh(x, prec),
            Acoth => certified::acoth(x, prec),
            Asin => certified::asin(x, prec),
            Acos => certified::acos(x, prec),
            Atan => Ok(certified::atan(x, prec)),
            Acot => Ok(certified::acot(x, prec)),
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Elementary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL.iter()
            .copied()
            .find(|e| e.name() == s)
            .or(if s == "log" { Some(Ln) } else { None })
            .ok_or_else(|| format!("unknown elementary function `{s}`"))
    }
}

/// The nine two-variable laws `g` with `f(x+y) = g(f(x), f(y))` for the
/// functions of the addition-theorem catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Exp,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Sin,
    Cos,
    Tan,
    Cot,
}

impl Law {
    pub const ALL: [Law; 9] = [
        Law::Exp,
        Law::Sinh,
        Law::Cosh,
        Law::Tanh,
        Law::Coth,
        Law::Sin,
        Law::Cos,
        Law::Tan,
        Law::Cot,
    ];

    pub fn function(self) -> Elementary {
        match self {
            Law::Exp => Exp,
            Law::Sinh => Sinh,
            Law::Cosh => Cosh,
            Law::Tanh => Tanh,
            Law::Coth => Coth,
            Law::Sin => Sin,
            Law::Cos => Cos,
            Law::Tan => Tan,
            Law::Cot => Cot,
        }
    }

    pub fn for_function(f: Elementary) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.function() == f)
    }

    /// Row numeral of the dispatcher table.
    pub fn roman(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"][self as usize]
    }

    /// `Mak-(iv)` style rule id.
    pub fn case_id(self) -> String {
        format!("Mak-({})", self.roman())
    }

    /// `g-tanh` style catalog id.
    pub fn op_name(self) -> String {
        format!("g-{}", self.function().name())
    }

    /// Accepts `Mak-(iv)`, `Mak-iv`, `iv`, `tanh` and `g-tanh`.
    pub fn parse(s: &str) -> Option<Law> {
        let t = s.trim();
        let t = t.strip_prefix("Mak-").unwrap_or(t);
        let t = t.trim_start_matches('(').trim_end_matches(')');
        let t = t.strip_prefix("g-").unwrap_or(t);
        Law::ALL
            .into_iter()
            .find(|l| l.roman() == t || l.function().name() == t)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.op_name())
    }
}
