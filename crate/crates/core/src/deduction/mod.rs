//! Forward-chaining deduction over facts "d derivates f on Ω" for an
//! additive `d`, with replayable proof traces.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::certified::CertError;
use crate::conic::ConicError;
use crate::laurent::LaurentError;

pub mod domain;
pub mod engine;
pub mod func;
pub mod maksa;
pub mod rules;
pub mod symparse;

pub use domain::{DBox, Domain, Endpoint, Iv};
pub use engine::{replay, run_deduction, Config, Deduction, ProofTrace, Store, TraceNode};
pub use func::{Fact, Func};
pub use maksa::{gamma_delta, gamma_delta_sym, maksa_verdict, row_hypothesis, MaksaOutcome};
pub use rules::{
    apply_addition_theorem, apply_compose, apply_descend, apply_inverse, conclude_from_power,
    localize_leibniz, localize_power, Output, Step,
};
pub use symparse::parse_symreal;

/// Conclusion about `d`. `StandardDerivation` subsumes `D1Zero`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Unconstrained,
    D1Zero,
    StandardDerivation,
    Inapplicable(String),
}

impl Verdict {
    /// Position in the lattice; `Inapplicable` carries no information.
    pub fn strength(&self) -> u8 {
        match self {
            Verdict::Unconstrained | Verdict::Inapplicable(_) => 0,
            Verdict::D1Zero => 1,
            Verdict::StandardDerivation => 2,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Unconstrained => "unconstrained",
            Verdict::D1Zero => "d1-zero",
            Verdict::StandardDerivation => "standard-derivation",
            Verdict::Inapplicable(_) => "inapplicable",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Inapplicable(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Inapplicable(r) => write!(f, "inapplicable ({r})"),
            v => f.write_str(v.tag()),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unconstrained" => Ok(Verdict::Unconstrained),
            "d1-zero" => Ok(Verdict::D1Zero),
            "standard-derivation" => Ok(Verdict::StandardDerivation),
            _ => Err(format!(
                "unknown verdict `{s}` (expected unconstrained, d1-zero or standard-derivation)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeductionError {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("empty domain: {0}")]
    EmptyDomain(String),
    #[error("image is not open: {0}")]
    ImageNotOpen(String),
    #[error("image not computable: {0}")]
    ImageNotComputable(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("singular derivative: {0}")]
    SingularDerivative(String),
    #[error("domain not covered: {0}")]
    DomainNotCovered(String),
    #[error("law {0} has no passing identity record")]
    UnverifiedLaw(String),
    #[error("bad exponent: {0}")]
    BadExponent(String),
    #[error("hypothesis of {row} failed: {failed}")]
    HypothesisFailed { row: String, failed: String },
    #[error("unknown fact id {0}")]
    UnknownFact(usize),
    #[error("domain {domain} is not inside the natural domain of {func}")]
    DomainOutsideFunction { func: String, domain: String },
    #[error("step is not applicable: {0}")]
    InvalidStep(String),
    #[error("replay of node {0} produced a different output")]
    ReplayMismatch(usize),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Conic(#[from] ConicError),
}
