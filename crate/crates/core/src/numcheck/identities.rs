//! Floating-point checks of the addition formulas, their coefficient
//! equations and the symbolic derivatives of the catalog.

use std::sync::OnceLock;

use serde::Serialize;

use super::expr::{law_coefficients, law_expr, Expr};
use super::NumcheckError;
use crate::elementary::{Elementary, Law, ALL};
use crate::exactnum::{int, rat};

/// Radical inverse of `i` in `base`.
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Deterministic 2-D low-discrepancy points in `]0,1[²`, offset by a hash of
/// `id` so that distinct identities see distinct grids.
pub fn halton(id: &str, n: usize) -> Vec<[f64; 2]> {
    let offset = id
        .bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100000001b3))
        % 1024;
    (1..=n as u64)
        .map(|i| [radical_inverse(i + offset, 2), radical_inverse(i + offset, 3)])
        .collect()
}

/// Map `t ∈ ]0,1[` into `[lo + m, hi − m]` with `m = (hi − lo)/16`.
fn inside(lo: f64, hi: f64, t: f64) -> f64 {
    let m = (hi - lo) / 16.0;
    lo + m + t * (hi - lo - 2.0 * m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub samples: usize,
    pub max_abs_residual: f64,
    /// Residual relative to `max(1, |lhs|, |rhs|)`.
    pub max_rel_residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<IdentityReport>,
}

impl IdentityReport {
    fn leaf(id: impl Into<String>, tol: f64) -> Self {
        IdentityReport {
            id: id.into(),
            samples: 0,
            max_abs_residual: 0.0,
            max_rel_residual: 0.0,
            tol,
            pass: true,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, lhs: f64, rhs: f64) {
        let abs = (lhs - rhs).abs();
        let rel = abs / 1f64.max(lhs.abs()).max(rhs.abs());
        // NaN residuals must fail the check
        self.max_abs_residual = if abs.is_nan() { f64::NAN } else { self.max_abs_residual.max(abs) };
        self.max_rel_residual = if rel.is_nan() { f64::NAN } else { self.max_rel_residual.max(rel) };
    }

    fn finish(mut self, samples: usize) -> Self {
        self.samples = samples;
        self.pass = self.max_rel_residual < self.tol;
        self
    }

    fn group(id: impl Into<String>, samples: usize, tol: f64, checks: Vec<IdentityReport>) -> Self {
        let max = |f: fn(&IdentityReport) -> f64| {
            checks.iter().map(f).fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) })
        };
        IdentityReport {
            id: id.into(),
            samples,
            max_abs_residual: max(|c| c.max_abs_residual),
            max_rel_residual: max(|c| c.max_rel_residual),
            tol,
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }
}

/// Compare every symbolic partial of `e` at `point` against a central
/// difference with step `h·max(1, |x_i|)`.
pub fn grad_check(e: &Expr, point: &[f64], h: f64, tol: f64) -> Result<IdentityReport, NumcheckError> {
    let mut rep = IdentityReport::leaf(format!("grad {e}"), tol);
    let n = e.arity();
    if point.len() < n {
        return Err(NumcheckError::ArityMismatch {
            expected: n,
            got: point.len(),
        });
    }
    for i in 0..n {
        let step = h * 1f64.max(point[i].abs());
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[i] += step;
        minus[i] -= step;
        let (fp, fm) = (e.eval_f64(&plus), e.eval_f64(&minus));
        let sym = e.diff(i).eval_f64(point);
        if !(fp.is_finite() && fm.is_finite() && sym.is_finite()) {
            return Err(NumcheckError::DomainViolation(format!("{e} near {point:?}")));
        }
        rep.record(sym, (fp - fm) / (2.0 * step));
    }
    Ok(rep.finish(1))
}

fn merge(into: &mut IdentityReport, r: IdentityReport) {
    into.max_abs_residual = into.max_abs_residual.max(r.max_abs_residual);
    into.max_rel_residual = into.max_rel_residual.max(r.max_rel_residual);
    if r.max_rel_residual.is_nan() {
        into.max_rel_residual = f64::NAN;
    }
}

/// A sampling box `[lo, hi]` (margins applied inside).
type Span = (f64, f64);

fn catalog_span(f: Elementary) -> Span {
    use Elementary::*;
    match f {
        Ln => (0.0, 4.0),
        Coth => (0.2, 3.0),
        Tan => (-1.4, 1.4),
        Cot => (0.2, 2.9),
        Acosh | Acoth => (1.0, 4.0),
        Atanh | Asin | Acos => (-1.0, 1.0),
        _ => (-3.0, 3.0),
    }
}

/// Sampling box in the `(u, v)` plane where the law is smooth.
fn law_span(l: Law) -> Span {
    match l {
        Law::Exp | Law::Sinh => (-2.0, 2.0),
        Law::Cosh => (1.0, 3.0),
        Law::Tanh | Law::Tan => (-0.9, 0.9),
        Law::Coth => (1.1, 3.0),
        Law::Sin | Law::Cos => (-1.0, 1.0),
        Law::Cot => (0.2, 2.0),
    }
}

/// Box in `x`-space where the addition formula holds with the principal
/// square roots.
fn addition_span(l: Law) -> Span {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    match l {
        Law::Exp | Law::Sinh | Law::Tanh => (-2.0, 2.0),
        Law::Cosh | Law::Coth => (0.0, 2.0),
        Law::Sin => (-FRAC_PI_2, FRAC_PI_2),
        Law::Cos => (0.0, PI),
        Law::Tan => (-FRAC_PI_4, FRAC_PI_4),
        Law::Cot => (0.0, FRAC_PI_2),
    }
}

/// Name of the coefficient equation for the law.
pub fn phi_name(l: Law) -> String {
    match l {
        Law::Exp => "Phiexp".into(),
        _ => format!("Phi{}", l.function().name()),
    }
}

fn check_pairs(
    id: &str,
    samples: usize,
    tol: f64,
    pairs: &[(Expr, Expr)],
    point: impl Fn([f64; 2]) -> Vec<f64>,
) -> IdentityReport {
    let mut rep = IdentityReport::leaf(id, tol);
    for p in halton(id, samples) {
        let args = point(p);
        for (a, b) in pairs {
            rep.record(a.eval_f64(&args), b.eval_f64(&args));
        }
    }
    rep.finish(samples)
}

fn addition_check(l: Law, samples: usize, tol: f64) -> IdentityReport {
    let f = l.function();
    let (lo, hi) = addition_span(l);
    let id = format!("{}/addition", l.case_id());
    let x = Expr::var(0);
    let y = Expr::var(1);
    let lhs = Expr::apply(f, x.clone().add(y.clone()));
    let rhs = law_expr(l).subst(&[Expr::apply(f, x), Expr::apply(f, y)]);
    check_pairs(&id, samples, tol, &[(lhs, rhs)], |p| {
        vec![inside(lo, hi, p[0]), inside(lo, hi, p[1])]
    })
}

fn coefficient_check(l: Law, samples: usize, tol: f64) -> IdentityReport {
    let g = law_expr(l);
    let (b, c) = law_coefficients(l);
    let (lo, hi) = law_span(l);
    check_pairs(&phi_name(l), samples, tol, &[(g.diff(0), b), (g.diff(1), c)], |p| {
        vec![inside(lo, hi, p[0]), inside(lo, hi, p[1])]
    })
}

/// `(A, B, C)` of the symmetrized equation `d(A) = B·d(u) + C·d(v)` obtained
/// by combining the law at `v` and `−v`.
pub fn symmetrized(l: Law) -> Option<(Expr, Expr, Expr)> {
    let u = || Expr::var(0);
    let v = || Expr::var(1);
    let one = || Expr::int(1);
    let sq = |e: Expr| e.pow(int(2));
    match l {
        Law::Sinh => {
            let w = || one().add(sq(v())).sqrt();
            Some((u().mul(w()), w(), u().mul(v()).div(w())))
        }
        Law::Sin => {
            let w = || one().sub(sq(v())).sqrt();
            Some((u().mul(w()), w(), u().mul(v()).div(w()).neg()))
        }
        Law::Cos => Some((u().mul(v()), v(), u())),
        _ => None,
    }
}

fn symmetrization_check(l: Law, samples: usize, tol: f64) -> Option<IdentityReport> {
    let (a, b, c) = symmetrized(l)?;
    let g = law_expr(l);
    let (gb, gc) = law_coefficients(l);
    let flip = [Expr::var(0), Expr::var(1).neg()];
    let half = || Expr::c(rat(1, 2));
    // adding (sinh, sin) or subtracting (cos) the copy at −v
    let sign = if l == Law::Cos { -1 } else { 1 };
    let comb = |x: Expr, y: Expr, s: i64| {
        if s > 0 {
            half().mul(x.add(y))
        } else {
            half().mul(x.sub(y))
        }
    };
    let pairs = [
        (comb(g.clone(), g.subst(&flip), sign), a.clone()),
        (comb(gb.clone(), gb.subst(&flip), sign), b.clone()),
        // d(−v) = −d(v) flips the sign of the v-coefficient
        (comb(gc.clone(), gc.subst(&flip), -sign), c.clone()),
        (a.diff(0), b),
        (a.diff(1), c),
    ];
    let (lo, hi) = law_span(l);
    let id = format!("{}+", phi_name(l));
    Some(check_pairs(&id, samples, tol, &pairs, |p| {
        vec![inside(lo, hi, p[0]), inside(lo, hi, p[1])]
    }))
}

/// All identities used by one row of the dispatcher.
pub fn verify_addition_identity(l: Law, samples: usize, tol: f64) -> IdentityReport {
    let mut checks = vec![addition_check(l, samples, tol), coefficient_check(l, samples, tol)];
    checks.extend(symmetrization_check(l, samples, tol));
    IdentityReport::group(l.case_id(), samples, tol, checks)
}

/// `d(√(1−x²)) = −x/√(1−x²)·d(x)`: the printed coefficient against the
/// symbolic derivative on `[−15/16, 15/16]`.
pub fn verify_bor_identity(samples: usize, tol: f64) -> IdentityReport {
    let x = || Expr::var(0);
    let root = || Expr::int(1).sub(x().pow(int(2))).sqrt();
    let printed = x().div(root()).neg();
    let derived = root().diff(0);
    let mut rep = IdentityReport::leaf("bor", tol);
    for p in halton("bor", samples) {
        let t = -15.0 / 16.0 + p[0] * 15.0 / 8.0;
        rep.record(printed.eval_f64(&[t]), derived.eval_f64(&[t]));
    }
    rep.finish(samples)
}

/// Parse `Mak-(iv)`, `Mak-iv`, `iv` or a function name.
pub fn parse_case(s: &str) -> Result<Law, NumcheckError> {
    Law::parse(s).ok_or_else(|| NumcheckError::UnknownCase(s.to_string()))
}

/// Laws whose identities pass at 64 samples and tolerance `1e−9`; computed
/// once per process.
pub fn verified_laws() -> &'static [Law] {
    static CACHE: OnceLock<Vec<Law>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Law::ALL
            .into_iter()
            .filter(|&l| verify_addition_identity(l, 64, 1e-9).pass)
            .collect()
    })
}

/// Gradient checks for every catalog entry: the eighteen elementary
/// functions, a spread of rational powers, and the nine laws.
pub fn catalog_grad_checks(points: usize, tol: f64) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let mut run = |id: String, e: Expr, span: Span, two: bool| {
        let mut rep = IdentityReport::leaf(id.clone(), tol);
        let mut violation = None;
        for p in halton(&id, points) {
            let pt = if two {
                vec![inside(span.0, span.1, p[0]), inside(span.0, span.1, p[1])]
            } else {
                vec![inside(span.0, span.1, p[0])]
            };
            match grad_check(&e, &pt, 1e-6, tol) {
                Ok(r) => merge(&mut rep, r),
                Err(err) => violation = Some(err),
            }
        }
        let mut rep = rep.finish(points);
        if violation.is_some() {
            rep.pass = false;
        }
        out.push(rep);
    };
    for f in ALL {
        run(
            format!("grad {}", f.name()),
            Expr::apply(f, Expr::var(0)),
            catalog_span(f),
            false,
        );
    }
    for (r, span) in [
        (int(2), (-3.0, 3.0)),
        (int(3), (-3.0, 3.0)),
        (int(-1), (0.25, 3.0)),
        (rat(1, 2), (0.25, 4.0)),
        (rat(1, 3), (0.25, 4.0)),
        (rat(-3, 2), (0.25, 4.0)),
    ] {
        run(format!("grad power({r})"), Expr::var(0).pow(r), span, false);
    }
    for l in Law::ALL {
        run(format!("grad {}", l.op_name()), law_expr(l), law_span(l), true);
    }
    out
}
