//! Floating-point oracle for the analytic identities, and the exact model
//! `d = d/dt` on `ℚ(t)` used to property-test the deduction rules.

use thiserror::Error;

use crate::deduction::Func;

pub mod expr;
pub mod identities;
pub mod ratfunc;

pub use expr::Expr;
pub use identities::{
    catalog_grad_checks, grad_check, verified_laws, verify_addition_identity, verify_bor_identity,
    IdentityReport,
};
pub use ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumcheckError {
    #[error("not algebraic over Q: {0}")]
    NonAlgebraicFunction(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("sample outside the safe domain: {0}")]
    DomainViolation(String),
    #[error("unknown identity case `{0}`")]
    UnknownCase(String),
}

/// The model derivation: formal `d/dt`.
pub fn model_derivate(x: &RatFunc) -> RatFunc {
    x.derivative()
}

/// Whether `d(f_j(w)) = Σ ∂ᵢf_j(w)·d(wᵢ)` holds exactly in `ℚ(t)` for every
/// component `j`.
pub fn model_check_fact(f: &Func, w: &[RatFunc]) -> Result<bool, NumcheckError> {
    let (n, _) = f.arity();
    if w.len() != n {
        return Err(NumcheckError::ArityMismatch { expected: n, got: w.len() });
    }
    let dw: Vec<RatFunc> = w.iter().map(model_derivate).collect();
    for e in f.to_exprs() {
        let lhs = model_derivate(&e.eval_ratfunc(w)?);
        let mut rhs = RatFunc::zero();
        for (i, di) in dw.iter().enumerate() {
            rhs = rhs.add(&e.diff(i).eval_ratfunc(w)?.mul(di));
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
