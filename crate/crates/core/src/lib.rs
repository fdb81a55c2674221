//! Exact deduction calculus for additive functions `d: ℝ → ℝ` that satisfy
//! the derivation identity `d(f(x)) = f'(x)·d(x)` for selected functions `f`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rationals, quadratic surds, open intervals, simplest rationals.
//! * [`poly`], [`certified`], [`symreal`], [`elementary`]: polynomial, interval
//!   and symbolic-real machinery used to decide inequalities exactly or with
//!   certified bounds.
//! * [`laurent`]: Laurent polynomials and the `P∘Q⁻¹` classification.
//! * [`conic`]: dense rational points on the three conic sets.
//! * [`deduction`]: facts, rules, the nine-row addition-law dispatcher, and
//!   the saturating driver with replayable traces.
//! * [`numcheck`]: floating-point identity oracle and the exact `ℚ(t)` model.

pub mod certified;
pub mod conic;
pub mod deduction;
pub mod elementary;
pub mod exactnum;
pub mod laurent;
pub mod numcheck;
pub mod poly;
pub mod symreal;
