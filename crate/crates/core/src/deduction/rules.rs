//! The inference rules. Each is a pure function from premise facts to a
//! conclusion; `Step` records one application so it can be re-executed.

use std::cmp::Ordering;

use num::traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::domain::{DBox, Domain, Endpoint, Iv};
use super::func::{Fact, Func};
use super::{DeductionError, Verdict};
use crate::conic::{membership, ConicSet};
use crate::elementary::{Elementary, Law};
use crate::exactnum::{format_rational, int, rat, BigRational};
use crate::laurent::{classify_polynomial, classify_pq, LaurentPoly, PowerDomain, PowerDomainKind};
use crate::numcheck::identities::verified_laws;
use crate::symreal::SymReal;

type Res<T> = Result<T, DeductionError>;

/// Conclusion of a trace node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Fact(Fact),
    Verdict(Verdict),
}

impl Output {
    pub fn fact(&self) -> Option<&Fact> {
        match self {
            Output::Fact(f) => Some(f),
            Output::Verdict(_) => None,
        }
    }

    pub fn verdict(&self) -> Option<&Verdict> {
        match self {
            Output::Verdict(v) => Some(v),
            Output::Fact(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Output::Fact(f) => json!({ "fact": f.to_json() }),
            Output::Verdict(v) => json!({ "verdict": v.tag() }),
        }
    }
}

/// One rule application. Premises are node ids in the store.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Hypothesis(Fact),
    Compose { f: usize, g: usize },
    Descend { f: usize, gf: usize },
    Inverse { f: usize },
    Addition { f: usize, law: Law, omega1: Iv, omega2: Iv },
    WidenPower { f: usize },
    GlobalLeibniz { f: usize },
    LeibnizVerdict { f: usize },
    PowerVerdict { f: usize },
    Classify { f: usize },
    Symmetrize { f: usize },
    ConicD1 { f: usize, u: BigRational, v: BigRational },
    Bor { f: usize, d1: usize, u: BigRational },
    Substitute { f: usize, g: usize },
    Diagonal { f: usize, d1: usize },
    Reciprocal { f: usize, lambda: BigRational, mu: BigRational },
    Reflect { f: usize, lambda: BigRational, mu: BigRational, u: BigRational },
    Square { f: usize, d1: usize, lambda: BigRational, mu: BigRational },
}

impl Step {
    pub fn premises(&self) -> Vec<usize> {
        use Step::*;
        match self {
            Hypothesis(_) => vec![],
            Compose { f, g } => vec![*f, *g],
            Descend { f, gf } => vec![*f, *gf],
            Bor { f, d1, .. } | Diagonal { f, d1 } | Square { f, d1, .. } => vec![*f, *d1],
            Substitute { f, g } => vec![*f, *g],
            Inverse { f }
            | Addition { f, .. }
            | WidenPower { f }
            | GlobalLeibniz { f }
            | LeibnizVerdict { f }
            | PowerVerdict { f }
            | Classify { f }
            | Symmetrize { f }
            | ConicD1 { f, .. }
            | Reciprocal { f, .. }
            | Reflect { f, .. } => vec![*f],
        }
    }

    pub fn kind(&self) -> &'static str {
        use Step::*;
        match self {
            Hypothesis(_) => "hypothesis",
            Compose { .. } => "compose",
            Descend { .. } => "descend",
            Inverse { .. } => "inverse",
            Addition { .. } => "addition",
            WidenPower { .. } => "widen-power",
            GlobalLeibniz { .. } => "global-leibniz",
            LeibnizVerdict { .. } => "leibniz-verdict",
            PowerVerdict { .. } => "power-verdict",
            Classify { .. } => "classify",
            Symmetrize { .. } => "symmetrize",
            ConicD1 { .. } => "conic-d1",
            Bor { .. } => "companion-root",
            Substitute { .. } => "substitute",
            Diagonal { .. } => "diagonal",
            Reciprocal { .. } => "reciprocal",
            Reflect { .. } => "reflect",
            Square { .. } => "square",
        }
    }

    /// Parameters beyond the premises, for the JSON trace.
    pub fn args(&self) -> Option<Value> {
        let q = |x: &BigRational| json!(format_rational(x));
        use Step::*;
        Some(match self {
            Addition { law, omega1, omega2, .. } => json!({
                "law": law.op_name(),
                "omega1": omega1.to_json(),
                "omega2": omega2.to_json(),
            }),
            ConicD1 { u, v, .. } => json!({"u": q(u), "v": q(v)}),
            Bor { u, .. } => json!({"u": q(u)}),
            Reciprocal { lambda, mu, .. } => json!({"lambda": q(lambda), "mu": q(mu)}),
            Reflect { lambda, mu, u, .. } => json!({"lambda": q(lambda), "mu": q(mu), "u": q(u)}),
            Square { lambda, mu, .. } => json!({"lambda": q(lambda), "mu": q(mu)}),
            _ => return None,
        })
    }
}

fn want_fact<'a>(o: &'a Output, what: &str) -> Res<&'a Fact> {
    o.fact()
        .ok_or_else(|| DeductionError::InvalidStep(format!("{what}: premise is a verdict, not a fact")))
}

fn want_d1(o: &Output) -> Res<()> {
    match o.verdict() {
        Some(v) if v.strength() >= Verdict::D1Zero.strength() => Ok(()),
        _ => Err(DeductionError::InvalidStep("premise must establish d(1) = 0".into())),
    }
}

/// Runs a step on already-resolved premise outputs (in `Step::premises` order).
/// Returns the conclusion and an optional trace note.
pub fn execute(step: &Step, prem: &[&Output]) -> Res<(Output, Option<String>)> {
    use Step::*;
    let fact = |i: usize| want_fact(prem[i], step.kind());
    let f = |x: Fact| Ok((Output::Fact(x), None));
    match step {
        Hypothesis(h) => {
            h.func.check_domain(&h.domain)?;
            f(h.clone())
        }
        Compose { .. } => f(apply_compose(fact(0)?, fact(1)?)?),
        Descend { .. } => f(apply_descend(fact(0)?, fact(1)?)?),
        Inverse { .. } => f(apply_inverse(fact(0)?)?),
        Addition { law, omega1, omega2, .. } => {
            f(apply_addition_theorem(fact(0)?, *law, omega1, omega2)?)
        }
        WidenPower { .. } => {
            let out = localize_power(fact(0)?)?;
            let note = nisalt_note(fact(0)?);
            Ok((Output::Fact(out), Some(note)))
        }
        GlobalLeibniz { .. } => Ok((
            Output::Fact(localize_leibniz(fact(0)?)?),
            Some("for rationals p, q: pq d(xy) = d(px qy) = p d(x) q y + p x q d(y), moving any pair into the box".into()),
        )),
        LeibnizVerdict { .. } => {
            leibniz_verdict(fact(0)?)?;
            Ok((
                Output::Verdict(Verdict::StandardDerivation),
                Some("additive and d(xy) = y d(x) + x d(y) for all real x, y".into()),
            ))
        }
        PowerVerdict { .. } => {
            let v = conclude_from_power(fact(0)?)?;
            if v.strength() == 0 {
                return Err(DeductionError::BadExponent("trivial exponent".into()));
            }
            Ok((Output::Verdict(v), None))
        }
        Classify { .. } => {
            let (v, note) = classify_laurent(fact(0)?)?;
            Ok((Output::Verdict(v), Some(note)))
        }
        Symmetrize { .. } => f(symmetrize(fact(0)?)?),
        ConicD1 { u, v, .. } => {
            let note = conic_d1(fact(0)?, u, v)?;
            Ok((Output::Verdict(Verdict::D1Zero), Some(note)))
        }
        Bor { u, .. } => {
            want_d1(prem[1])?;
            f(companion_root(fact(0)?, u)?)
        }
        Substitute { .. } => f(substitute(fact(0)?, fact(1)?)?),
        Diagonal { .. } => {
            want_d1(prem[1])?;
            f(diagonal(fact(0)?)?)
        }
        Reciprocal { lambda, mu, .. } => f(reciprocal(fact(0)?, lambda, mu)?),
        Reflect { lambda, mu, u, .. } => {
            let note = reflect(fact(0)?, lambda, mu, u)?;
            Ok((Output::Verdict(Verdict::D1Zero), Some(note)))
        }
        Square { lambda, mu, .. } => {
            want_d1(prem[1])?;
            f(square(fact(0)?, lambda, mu)?)
        }
    }
}

/// Rule id and descriptive citation of a step.
pub fn rule_of(step: &Step, law: Option<Law>) -> (String, &'static str) {
    use Step::*;
    let mak = || law.map(Law::case_id).unwrap_or_else(|| "Mak".into());
    match step {
        Hypothesis(_) => ("hypothesis".into(), "user-supplied hypothesis"),
        Compose { .. } => ("Inv-i".into(), "inverse-function theorem for derivations, part (i): composition g∘f"),
        Descend { .. } => ("Inv-ii".into(), "inverse-function theorem for derivations, part (ii): from f and g∘f to g on the open image"),
        Inverse { .. } => ("Inv-iii".into(), "inverse-function theorem for derivations, part (iii): the inverse of a map with nonsingular derivative"),
        Addition { .. } => ("CorAdd".into(), "addition-theorem corollary: f(x+y) = g(f(x), f(y)) transfers the derivation to g on f(Ω1)×f(Ω2)"),
        WidenPower { .. } => ("Nisalt".into(), "power-identity localization: validity on an open interval extends to D_(r-1)"),
        GlobalLeibniz { .. } | LeibnizVerdict { .. } => ("LRext".into(), "Leibniz localization: the product rule on an open box extends to the whole plane"),
        PowerVerdict { .. } => ("Nis".into(), "power criterion: d(x^r) = r x^(r-1) d(x) on an interval with rational r not 0 or 1 forces a standard derivation"),
        Classify { .. } => ("PQ-case".into(), "Laurent-polynomial trichotomy for Q'(u) d(P(u)) = P'(u) d(Q(u)), polynomial corollary when Q = u"),
        Symmetrize { .. } => (mak(), "combine the law at (u, v) and (u, -v) using d(-v) = -d(v)"),
        ConicD1 { .. } => (mak(), "evaluate at a rational point of the conic set; Q-homogeneity turns every term into a multiple of d(1)"),
        Bor { .. } => (mak(), "fix a rational u: with d(1) = 0 the symmetrized identity becomes the rule for the companion square root"),
        Substitute { .. } => (mak(), "substitute w = sqrt(1 +- v^2) to obtain the product rule on a box"),
        Diagonal { .. } => (mak(), "diagonal substitution v := u gives the square rule"),
        Reciprocal { .. } => (mak(), "rational box with lambda*mu = r > 0; substitution v := r/u gives the reciprocal rule"),
        Reflect { .. } => (mak(), "rational box with lambda + mu = r != 0; substitution v := r - u at a rational u gives d(1) = 0"),
        Square { .. } => (mak(), "substitution v := r - u with d(1) = 0 gives the square rule"),
    }
}

fn nisalt_note(f: &Fact) -> String {
    let r = match &f.func {
        Func::Power(r) => format_rational(r),
        _ => "?".into(),
    };
    format!(
        "r = {r}: for rationals q, q^m d(x^r) = d((qx)^r) = r (qx)^(r-1) d(qx) = q^m r x^(r-1) d(x); \
         the domain is widened to D_(r-1) as stated (the argument itself picks elements of D_r without 0)"
    )
}

fn single_interval<'a>(f: &'a Fact, what: &str) -> Res<&'a Iv> {
    f.domain.single_interval().ok_or_else(|| {
        DeductionError::ShapeMismatch(format!("{what} needs a single-interval domain, got {}", f.domain))
    })
}

fn single_box<'a>(f: &'a Fact, what: &str) -> Res<&'a DBox> {
    f.domain
        .single_box()
        .ok_or_else(|| DeductionError::ShapeMismatch(format!("{what} needs a single box, got {}", f.domain)))
}

/// `g∘f` from facts for `f` and `g`.
pub fn apply_compose(f: &Fact, g: &Fact) -> Res<Fact> {
    let (_, m) = f.func.arity();
    let (k, _) = g.func.arity();
    if m != k {
        return Err(DeductionError::ArityMismatch(format!(
            "{} has {m} outputs but {} takes {k} inputs",
            f.func, g.func
        )));
    }
    let func = simplify_compose(&f.func, &g.func, &f.domain)?;
    let mut boxes = Vec::new();
    for b in &f.domain.0 {
        let img = f.func.image_box(&b.interior())?;
        if Domain::from_box(img.clone()).subset_of(&g.domain)? {
            boxes.push(b.interior());
            continue;
        }
        // pull back the part of g's domain met by the image
        if b.dim() != 1 || g.domain.dim() != 1 {
            return Err(DeductionError::ImageNotComputable(format!(
                "pullback of {} under {}",
                g.domain, f.func
            )));
        }
        for gb in &g.domain.0 {
            if let Some(meet) = img.0[0].intersect(&gb.0[0])? {
                boxes.push(DBox(vec![pullback(&f.func, &b.0[0], &meet)?]));
            }
        }
    }
    if boxes.is_empty() {
        return Err(DeductionError::EmptyDomain(format!(
            "image of {} under {} misses {}",
            f.domain, f.func, g.domain
        )));
    }
    Fact::new(func, Domain(boxes))
}

fn pullback(f: &Func, dom: &Iv, target: &Iv) -> Res<Iv> {
    let inv = f
        .inverse_on(dom)?
        .ok_or_else(|| DeductionError::ImageNotComputable(format!("no catalog inverse of {f} on {dom}")))?;
    let (img, _) = inv.image(target)?;
    img.intersect(dom)?
        .ok_or_else(|| DeductionError::EmptyDomain(format!("pullback of {target} under {f}")))
}

fn simplify_compose(inner: &Func, outer: &Func, dom: &Domain) -> Res<Func> {
    Ok(match (inner, outer) {
        (Func::Id, g) => g.clone(),
        (f, Func::Id) => f.clone(),
        (Func::Power(a), Func::Power(b)) => {
            let positive = dom.subset_of(&Domain::interval(Iv::positive()))?;
            if positive || (a.is_integer() && b.is_integer()) {
                Func::Power(a * b)
            } else {
                Func::compose(inner.clone(), outer.clone())
            }
        }
        _ => Func::compose(inner.clone(), outer.clone()),
    })
}

/// `g` on `f(dom)` from facts for `f` and for `g∘f`.
pub fn apply_descend(f: &Fact, gf: &Fact) -> Res<Fact> {
    let g = match &gf.func {
        Func::Compose(inner, outer) if **inner == f.func => (**outer).clone(),
        other if f.func == Func::Id || is_identity_tuple(&f.func) => {
            let meet = intersect_domains(&f.domain, &gf.domain)?;
            return Fact::new(other.clone(), meet);
        }
        other => {
            return Err(DeductionError::ShapeMismatch(format!(
                "{other} is not a composite with inner map {}",
                f.func
            )))
        }
    };
    let meet = intersect_domains(&f.domain, &gf.domain)?;
    let mut boxes = Vec::new();
    for b in &meet.0 {
        boxes.push(f.func.image_box(b).map_err(|e| match e {
            DeductionError::ImageNotComputable(s) => DeductionError::ImageNotOpen(s),
            e => e,
        })?);
    }
    Fact::new(g, Domain(boxes))
}

fn is_identity_tuple(f: &Func) -> bool {
    matches!(f, Func::Tuple(items) if items.iter().all(|x| *x == Func::Id))
}

fn intersect_domains(a: &Domain, b: &Domain) -> Res<Domain> {
    let mut out = Vec::new();
    for x in &a.0 {
        for y in &b.0 {
            if let Some(z) = x.intersect(y)? {
                out.push(z);
            }
        }
    }
    if out.is_empty() {
        return Err(DeductionError::EmptyDomain(format!("{a} and {b} do not meet")));
    }
    Ok(Domain(out))
}

/// `f⁻¹` on the image of a one-variable fact.
pub fn apply_inverse(f: &Fact) -> Res<Fact> {
    if f.func.arity() != (1, 1) {
        return Err(DeductionError::NotInvertible(format!("{} is not a map R -> R", f.func)));
    }
    let iv = single_interval(f, "Inv-iii")?.interior();
    if f.func.singular_on(&iv)? {
        return Err(DeductionError::SingularDerivative(format!("{} on {iv}", f.func)));
    }
    let inv = f
        .func
        .inverse_on(&iv)?
        .ok_or_else(|| DeductionError::NotInvertible(format!("no catalog inverse of {} on {iv}", f.func)))?;
    let (img, _) = f.func.image(&iv)?;
    Fact::new(inv, Domain::interval(img))
}

fn law_region_ok(law: Law, o1: &Iv, o2: &Iv) -> Res<bool> {
    let pi = |q: BigRational| Endpoint::At(SymReal::pi_times(q));
    let within = |iv: &Iv, lo: Endpoint, hi: Endpoint| -> Res<bool> { iv.subset_of(&Iv::open(lo, hi)?) };
    let both = |lo: Endpoint, hi: Endpoint| -> Res<bool> {
        Ok(within(o1, lo.clone(), hi.clone())? && within(o2, lo, hi)?)
    };
    let sum = o1.sum(o2);
    let zero = || Endpoint::int(0);
    let half = || rat(1, 2);
    Ok(match law {
        Law::Exp | Law::Sinh | Law::Tanh => true,
        Law::Cosh | Law::Coth => {
            both(zero(), Endpoint::PosInf)? || both(Endpoint::NegInf, zero())?
        }
        Law::Sin => both(pi(-half()), pi(half()))?,
        Law::Cos => both(zero(), pi(int(1)))? || both(pi(int(-1)), zero())?,
        Law::Tan => both(pi(-half()), pi(half()))? && within(&sum, pi(-half()), pi(half()))?,
        Law::Cot => {
            (both(zero(), pi(int(1)))? && within(&sum, zero(), pi(int(1)))?)
                || (both(pi(int(-1)), zero())? && within(&sum, pi(int(-1)), zero())?)
        }
    })
}

/// `g` on `f(Ω1)×f(Ω2)` from a fact for the catalog function `f`.
pub fn apply_addition_theorem(f: &Fact, law: Law, omega1: &Iv, omega2: &Iv) -> Res<Fact> {
    if f.func != Func::Elem(law.function()) {
        return Err(DeductionError::ShapeMismatch(format!(
            "{} does not satisfy the addition law {law}",
            f.func
        )));
    }
    if !verified_laws().contains(&law) {
        return Err(DeductionError::UnverifiedLaw(law.op_name()));
    }
    let (o1, o2) = (omega1.interior(), omega2.interior());
    let sum = o1.sum(&o2);
    for (name, part) in [("omega1", &o1), ("omega2", &o2), ("omega1 + omega2", &sum)] {
        if !Domain::interval(part.clone()).subset_of(&f.domain)? {
            return Err(DeductionError::DomainNotCovered(format!("{name} = {part} is not inside {}", f.domain)));
        }
    }
    if !law_region_ok(law, &o1, &o2)? {
        return Err(DeductionError::DomainNotCovered(format!(
            "{o1} x {o2} is outside the region where {} satisfies the law {law}",
            f.func
        )));
    }
    let (i1, _) = f.func.image(&o1)?;
    let (i2, _) = f.func.image(&o2)?;
    Fact::new(Func::Law(law), Domain::from_box(DBox(vec![i1, i2])))
}

/// `D_r` as a domain.
pub fn power_domain(r: &BigRational) -> Domain {
    let zero = || Endpoint::int(0);
    match PowerDomain::of(r).domain {
        PowerDomainKind::Reals => Domain::real_line(),
        PowerDomainKind::NonzeroReals => Domain(vec![
            DBox(vec![Iv::open(Endpoint::NegInf, zero()).unwrap()]),
            DBox(vec![Iv::open(zero(), Endpoint::PosInf).unwrap()]),
        ]),
        PowerDomainKind::NonNegative => Domain::interval(Iv::positive().with_closed(true, false)),
        PowerDomainKind::Positive => Domain::interval(Iv::positive()),
    }
}

/// Widens a power fact on an open interval to `D_(r−1)`.
pub fn localize_power(f: &Fact) -> Res<Fact> {
    let r = match &f.func {
        Func::Power(r) => r.clone(),
        other => return Err(DeductionError::ShapeMismatch(format!("{other} is not a power"))),
    };
    if f.domain.0.is_empty() {
        return Err(DeductionError::EmptyDomain("power fact".into()));
    }
    let target = power_domain(&(&r - BigRational::one()));
    let mut interior = f.domain.clone();
    interior.0.iter_mut().for_each(|b| *b = b.interior());
    if !interior.subset_of(&target)? {
        return Err(DeductionError::DomainNotCovered(format!(
            "{} is not inside D_({}) = {target}",
            f.domain,
            format_rational(&(&r - BigRational::one()))
        )));
    }
    Fact::new(Func::Power(r), target)
}

/// The product rule on an open box extends to the plane.
pub fn localize_leibniz(f: &Fact) -> Res<Fact> {
    if !matches!(f.func, Func::Mul | Func::Law(Law::Exp)) {
        return Err(DeductionError::ShapeMismatch(format!("{} is not the product map", f.func)));
    }
    if f.domain.0.is_empty() {
        return Err(DeductionError::EmptyDomain("product fact".into()));
    }
    Fact::new(Func::Mul, Domain::plane())
}

fn leibniz_verdict(f: &Fact) -> Res<()> {
    if f.func != Func::Mul || f.domain != Domain::plane() {
        return Err(DeductionError::ShapeMismatch(format!("expected the product map on the plane, got {f}")));
    }
    Ok(())
}

/// `d(x^r) = r x^(r−1) d(x)` on an open interval forces a standard
/// derivation unless `r ∈ {0, 1}`.
pub fn conclude_from_power(f: &Fact) -> Res<Verdict> {
    let r = match &f.func {
        Func::Power(r) => r,
        other => return Err(DeductionError::ShapeMismatch(format!("{other} is not a power"))),
    };
    if r.is_zero() || r.is_one() {
        return Ok(Verdict::Inapplicable("trivial-exponent".into()));
    }
    if f.domain.0.is_empty() {
        return Err(DeductionError::EmptyDomain("power fact".into()));
    }
    let mut interior = f.domain.clone();
    interior.0.iter_mut().for_each(|b| *b = b.interior());
    if !interior.subset_of(&power_domain(r))? {
        return Err(DeductionError::DomainNotCovered(format!("{} is not inside D_{}", f.domain, format_rational(r))));
    }
    Ok(Verdict::StandardDerivation)
}

fn classify_laurent(f: &Fact) -> Res<(Verdict, String)> {
    let p = match &f.func {
        Func::Laurent(p) => p,
        other => return Err(DeductionError::ShapeMismatch(format!("{other} is not a Laurent polynomial"))),
    };
    let iv = single_interval(f, "PQ-case")?;
    if p.is_polynomial() {
        let oi = iv.to_open_interval().unwrap_or_else(crate::exactnum::OpenInterval::real_line);
        let v = classify_polynomial(p, &oi)?;
        let why = match p.degree() {
            Some(0) => "degree 0: d(P) = 0 gives d(1) = 0".to_string(),
            Some(1) => format!("degree 1: the identity reduces to P(0) d(1) = 0 with P(0) = {}", format_rational(&p.coeff(0))),
            _ => "degree >= 2: the polynomial criterion forces a standard derivation".to_string(),
        };
        return Ok((v, format!("polynomial case with Q = u; {why}")));
    }
    let case = classify_pq(p, &LaurentPoly::u());
    let steps: Vec<String> = case.trace.iter().map(|n| format!("{}: {}", n.step, n.detail)).collect();
    Ok((case.verdict, format!("Q = u, case {}; {}", case.tag.label(), steps.join("; "))))
}

fn law_of(f: &Fact, allowed: &[Law], what: &str) -> Res<Law> {
    match f.func {
        Func::Law(l) if allowed.contains(&l) => Ok(l),
        _ => Err(DeductionError::ShapeMismatch(format!("{what} does not apply to {}", f.func))),
    }
}

fn symmetric(iv: &Iv) -> Res<bool> {
    if iv.lo == iv.hi.neg() {
        return Ok(true);
    }
    match (&iv.lo, &iv.hi) {
        (Endpoint::At(a), Endpoint::At(b)) => Ok(a.as_exact().is_some()
            && b.as_exact().is_some()
            && Endpoint::At(a.neg()).cmp(&Endpoint::At(b.clone()))? == Ordering::Equal),
        _ => Ok(false),
    }
}

/// Law at `(u, v)` combined with the law at `(u, −v)`.
pub fn symmetrize(f: &Fact) -> Res<Fact> {
    let l = law_of(f, &[Law::Sinh, Law::Sin, Law::Cos], "symmetrization")?;
    let b = single_box(f, "symmetrization")?.interior();
    if !symmetric(&b.0[1])? {
        return Err(DeductionError::ShapeMismatch(format!("v-interval {} is not symmetric about 0", b.0[1])));
    }
    let func = if l == Law::Cos { Func::Mul } else { Func::Sym(l) };
    Fact::new(func, Domain::from_box(b))
}

fn conic_of(l: Law) -> ConicSet {
    match l {
        Law::Sinh => ConicSet::U,
        Law::Sin => ConicSet::W,
        _ => ConicSet::V,
    }
}

/// `d(1) = 0` from the identity at a rational point of a conic set.
pub fn conic_d1(f: &Fact, u: &BigRational, v: &BigRational) -> Res<String> {
    let b = single_box(f, "conic evaluation")?.interior();
    if !(b.0[0].contains_rational(u)? && b.0[1].contains_rational(v)?) {
        return Err(DeductionError::InvalidStep(format!(
            "({}, {}) is not inside {b}",
            format_rational(u),
            format_rational(v)
        )));
    }
    let (set, coeff, point) = match f.func {
        Func::Sym(l @ (Law::Sinh | Law::Sin)) => {
            let set = conic_of(l);
            let w2 = set.radicand(v);
            let w = crate::exactnum::is_rational_square(&w2)
                .ok()
                .flatten()
                .ok_or_else(|| DeductionError::InvalidStep(format!("{} is not in {set}", format_rational(v))))?;
            // d(uw) = w d(u) ± (uv/w) d(v) with every term a multiple of d(1)
            let c = u * v * v / &w;
            (set, if l == Law::Sin { c } else { -c }, v.clone())
        }
        Func::Law(Law::Cosh) => {
            if u != v {
                return Err(DeductionError::InvalidStep("cosh evaluation uses u = v".into()));
            }
            (ConicSet::V, -(int(2) * u * u + BigRational::one()), v.clone())
        }
        _ => return Err(DeductionError::ShapeMismatch(format!("no conic evaluation for {}", f.func))),
    };
    if !membership(set, &point) {
        return Err(DeductionError::InvalidStep(format!("{} is not in {set}", format_rational(&point))));
    }
    if coeff.is_zero() {
        return Err(DeductionError::InvalidStep("the d(1) coefficient vanishes at this point".into()));
    }
    Ok(format!(
        "at (u, v) = ({}, {}) with {} in {set}: {} d(1) = 0",
        format_rational(u),
        format_rational(v),
        format_rational(&point),
        format_rational(&coeff)
    ))
}

/// The rule for `√(1 ± v²)` on the v-interval, fixing a rational `u ≠ 0`.
pub fn companion_root(f: &Fact, u: &BigRational) -> Res<Fact> {
    let l = match f.func {
        Func::Sym(l) => l,
        _ => return Err(DeductionError::ShapeMismatch(format!("{} is not symmetrized", f.func))),
    };
    let b = single_box(f, "companion root")?.interior();
    if u.is_zero() || !b.0[0].contains_rational(u)? {
        return Err(DeductionError::InvalidStep(format!("u = {} must be a nonzero point of {}", format_rational(u), b.0[0])));
    }
    Fact::new(Func::companion_root(l), Domain::interval(b.0[1].clone()))
}

fn root_end(l: Law, x: &SymReal) -> SymReal {
    match (l, x) {
        (Law::Sinh, SymReal::Apply(Elementary::Sinh, a)) => SymReal::apply(Elementary::Cosh, a),
        (Law::Sin, SymReal::Apply(Elementary::Sin, a)) => SymReal::apply(Elementary::Cos, a),
        (Law::Sin, _) => SymReal::int(1).sub(&x.mul(x)).sqrt(),
        _ => SymReal::int(1).add(&x.mul(x)).sqrt(),
    }
}

/// `w = √(1 ± v²)` turns the symmetrized identity into the product rule.
pub fn substitute(sym: &Fact, root: &Fact) -> Res<Fact> {
    let l = match sym.func {
        Func::Sym(l) => l,
        _ => return Err(DeductionError::ShapeMismatch(format!("{} is not symmetrized", sym.func))),
    };
    let b = single_box(sym, "substitution")?.interior();
    if root.func != Func::companion_root(l) || root.domain != Domain::interval(b.0[1].clone()) {
        return Err(DeductionError::ShapeMismatch(format!("{root} does not match {sym}")));
    }
    let a = match &b.0[1].hi {
        Endpoint::At(a) if symmetric(&b.0[1])? => a.clone(),
        _ => return Err(DeductionError::ShapeMismatch("v-interval must be ]-a, a[".into())),
    };
    let end = root_end(l, &a);
    let w = if l == Law::Sin {
        Iv::sym(end, SymReal::int(1))?.with_closed(false, true)
    } else {
        Iv::sym(SymReal::int(1), end)?.with_closed(true, false)
    };
    Fact::new(Func::Mul, Domain::from_box(DBox(vec![b.0[0].clone(), w])))
}

fn square_side(f: &Fact) -> Res<Iv> {
    let b = single_box(f, "substitution")?.interior();
    b.0[0]
        .intersect(&b.0[1])?
        .ok_or_else(|| DeductionError::EmptyDomain(format!("diagonal of {b}")))
}

/// `v := u` in the cosh law with `d(1) = 0`: the square rule.
pub fn diagonal(f: &Fact) -> Res<Fact> {
    law_of(f, &[Law::Cosh], "diagonal substitution")?;
    Fact::new(Func::Power(int(2)), Domain::interval(square_side(f)?))
}

fn rational_box(f: &Fact, lambda: &BigRational, mu: &BigRational) -> Res<Iv> {
    let side = square_side(f)?;
    let iv = Iv::rational(lambda.clone(), mu.clone())?;
    if !iv.subset_of(&side)? {
        return Err(DeductionError::InvalidStep(format!("{iv} is not inside {side}")));
    }
    Ok(iv)
}

/// `v := r/u` with `r = λμ`: the reciprocal rule on `]λ, μ[`.
pub fn reciprocal(f: &Fact, lambda: &BigRational, mu: &BigRational) -> Res<Fact> {
    let l = law_of(f, &[Law::Tanh, Law::Tan], "reciprocal substitution")?;
    let iv = rational_box(f, lambda, mu)?;
    let r = lambda * mu;
    if !r.is_positive() || (l == Law::Tan && r.is_one()) {
        return Err(DeductionError::InvalidStep(format!("lambda*mu = {} violates the side condition", format_rational(&r))));
    }
    Fact::new(Func::Power(int(-1)), Domain::interval(iv))
}

/// `v := r − u` at a rational `u` with `r = λ + μ`: `d(1) = 0`.
pub fn reflect(f: &Fact, lambda: &BigRational, mu: &BigRational, u: &BigRational) -> Res<String> {
    let l = law_of(f, &[Law::Coth, Law::Cot], "reflection")?;
    let iv = rational_box(f, lambda, mu)?;
    let r = lambda + mu;
    if r.is_zero() || !iv.contains_rational(u)? {
        return Err(DeductionError::InvalidStep("needs lambda + mu != 0 and u inside the box".into()));
    }
    let sign = if l == Law::Coth { "+" } else { "-" };
    Ok(format!(
        "d(u^2) = 2u d(u) {sign} 2 d(1) - u^2 d(1) with r = {}; at u = {} the u-terms cancel, leaving {sign}2 d(1) = 0",
        format_rational(&r),
        format_rational(u)
    ))
}

/// `v := r − u` with `d(1) = 0`: the square rule on `]λ, μ[`.
pub fn square(f: &Fact, lambda: &BigRational, mu: &BigRational) -> Res<Fact> {
    law_of(f, &[Law::Coth, Law::Cot], "reflection")?;
    let iv = rational_box(f, lambda, mu)?;
    if (lambda + mu).is_zero() {
        return Err(DeductionError::InvalidStep("lambda + mu must be nonzero".into()));
    }
    Fact::new(Func::Power(int(2)), Domain::interval(iv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> Iv {
        Iv::rational(int(a), int(b)).unwrap()
    }

    fn fact(func: Func, d: Iv) -> Fact {
        Fact::new(func, Domain::interval(d)).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = fact(Func::Power(int(2)), iv(1, 2));
        let g = fact(Func::Power(int(3)), iv(1, 4));
        assert_eq!(apply_compose(&f, &g).unwrap(), fact(Func::Power(int(6)), iv(1, 2)));
        let s = fact(Func::Elem(Elementary::Sinh), iv(-1, 1));
        let sq = fact(Func::Power(int(2)), iv(-2, 2));
        let out = apply_compose(&s, &sq).unwrap();
        assert_eq!(out.func, Func::compose(Func::Elem(Elementary::Sinh), Func::Power(int(2))));
        assert_eq!(out.domain, Domain::interval(iv(-1, 1)));
        let law = Fact::new(Func::Law(Law::Tanh), Domain::square(iv(0, 1))).unwrap();
        assert!(matches!(apply_compose(&s, &law), Err(DeductionError::ArityMismatch(_))));
    }

    #[test]
    fn descend_examples() {
        let lam = SymReal::rational(rat(1, 4));
        let side = Iv::sym(lam.neg(), lam.clone()).unwrap();
        let pair = Func::Tuple(vec![Func::Elem(Elementary::Sinh), Func::Elem(Elementary::Sinh)]);
        let f = Fact::new(pair.clone(), Domain::square(side.clone())).unwrap();
        let gf = Fact::new(Func::compose(pair, Func::Law(Law::Sinh)), Domain::square(side)).unwrap();
        let g = apply_descend(&f, &gf).unwrap();
        assert_eq!(g.func, Func::Law(Law::Sinh));
        let sl = SymReal::apply(Elementary::Sinh, &lam);
        assert_eq!(g.domain, Domain::square(Iv::sym(sl.neg(), sl).unwrap()));

        let id = fact(Func::Id, iv(0, 3));
        let h = fact(Func::Power(int(2)), iv(1, 2));
        assert_eq!(apply_descend(&id, &h).unwrap(), h);

        let c = fact(Func::Const(int(2)), iv(0, 1));
        let cg = fact(Func::compose(Func::Const(int(2)), Func::Power(int(2))), iv(0, 1));
        assert!(matches!(apply_descend(&c, &cg), Err(DeductionError::ImageNotOpen(_))));
    }

    #[test]
    fn inverse_examples() {
        let e = apply_inverse(&fact(Func::Elem(Elementary::Exp), iv(0, 1))).unwrap();
        assert_eq!(e.func, Func::Elem(Elementary::Ln));
        let euler = SymReal::apply(Elementary::Exp, &SymReal::int(1));
        assert_eq!(e.domain, Domain::interval(Iv::sym(SymReal::int(1), euler).unwrap()));
        let c = apply_inverse(&fact(Func::Power(int(3)), iv(1, 2))).unwrap();
        assert_eq!(c, fact(Func::Power(rat(1, 3)), iv(1, 8)));
        assert!(matches!(
            apply_inverse(&fact(Func::Power(int(2)), iv(-1, 1))),
            Err(DeductionError::SingularDerivative(_))
        ));
    }

    #[test]
    fn addition_examples() {
        let om = Iv::rational(rat(1, 2), int(1)).unwrap();
        let out = apply_addition_theorem(&fact(Func::Elem(Elementary::Exp), iv(0, 3)), Law::Exp, &om, &om).unwrap();
        assert_eq!(out.func, Func::Law(Law::Exp));
        let th = fact(Func::Elem(Elementary::Tanh), iv(-1, 1));
        let om = Iv::rational(rat(-1, 2), rat(1, 2)).unwrap();
        let out = apply_addition_theorem(&th, Law::Tanh, &om, &om).unwrap();
        let t = SymReal::apply(Elementary::Tanh, &SymReal::rational(rat(1, 2)));
        assert_eq!(out.domain, Domain::square(Iv::sym(t.neg(), t).unwrap()));
        let wide = iv(-1, 1);
        assert!(matches!(
            apply_addition_theorem(&th, Law::Tanh, &wide, &wide),
            Err(DeductionError::DomainNotCovered(_))
        ));
    }

    #[test]
    fn localization_examples() {
        assert_eq!(localize_power(&fact(Func::Power(int(2)), iv(5, 6))).unwrap().domain, Domain::real_line());
        let r = localize_power(&fact(Func::Power(int(-1)), iv(1, 2))).unwrap();
        assert_eq!(r.domain, power_domain(&int(-1)));
        assert_eq!(r.domain.0.len(), 2);
        let h = localize_power(&fact(Func::Power(rat(1, 2)), iv(1, 4))).unwrap();
        assert_eq!(h.domain, Domain::interval(Iv::positive()));

        let m = Fact::new(Func::Mul, Domain::square(iv(1, 2))).unwrap();
        let plane = localize_leibniz(&m).unwrap();
        assert_eq!(plane.domain, Domain::plane());
        assert_eq!(localize_leibniz(&plane).unwrap(), plane);
        let empty = Fact { func: Func::Mul, domain: Domain(vec![]) };
        assert!(matches!(localize_leibniz(&empty), Err(DeductionError::EmptyDomain(_))));
    }

    #[test]
    fn power_verdicts() {
        let v = |r: BigRational, a, b| conclude_from_power(&fact(Func::Power(r), iv(a, b))).unwrap();
        assert_eq!(v(int(2), 2, 3), Verdict::StandardDerivation);
        assert_eq!(v(int(1), 0, 1), Verdict::Inapplicable("trivial-exponent".into()));
        assert_eq!(v(rat(1, 2), 1, 4), Verdict::StandardDerivation);
    }
}
