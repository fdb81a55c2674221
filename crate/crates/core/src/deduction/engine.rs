//! Saturating driver. Facts live in an append-only store; every node records
//! the step that produced it so the whole trace can be re-executed.

use std::collections::HashMap;

use num::traits::{One, Zero};
use serde_json::{json, Value};

use super::func::{Fact, Func};
use super::maksa;
use super::rules::{execute, localize_power, rule_of, Output, Step};
use super::{DeductionError, Verdict};
use crate::elementary::Law;

type Res<T> = Result<T, DeductionError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Longest premise chain a node may sit on.
    pub max_depth: usize,
    /// Total number of nodes before the driver stops.
    pub max_nodes: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_depth: 32, max_nodes: 512 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNode {
    pub id: usize,
    pub rule: String,
    pub premises: Vec<usize>,
    pub step: Step,
    pub output: Output,
    pub citation: String,
    pub note: Option<String>,
    pub depth: usize,
}

impl TraceNode {
    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("id".into(), json!(self.id));
        m.insert("rule".into(), json!(self.rule));
        m.insert("step".into(), json!(self.step.kind()));
        m.insert("premises".into(), json!(self.premises));
        if let Some(a) = self.step.args() {
            m.insert("args".into(), a);
        }
        match &self.output {
            Output::Fact(f) => m.insert("fact".into(), f.to_json()),
            Output::Verdict(v) => m.insert("verdict".into(), json!(v.tag())),
        };
        m.insert("citation".into(), json!(self.citation));
        if let Some(n) = &self.note {
            m.insert("note".into(), json!(n));
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofTrace {
    pub nodes: Vec<TraceNode>,
}

impl ProofTrace {
    pub fn to_json(&self) -> Value {
        Value::Array(self.nodes.iter().map(TraceNode::to_json).collect())
    }

    /// Only the nodes the final verdict depends on, renumbered.
    pub fn support(&self) -> ProofTrace {
        let Some(root) = best_node(&self.nodes) else {
            return ProofTrace::default();
        };
        let mut keep = vec![false; self.nodes.len()];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            if !keep[i] {
                keep[i] = true;
                stack.extend(self.nodes[i].premises.iter().copied());
            }
        }
        let mut renum = HashMap::new();
        let mut nodes = Vec::new();
        for n in self.nodes.iter().filter(|n| keep[n.id]) {
            let id = nodes.len();
            renum.insert(n.id, id);
            let mut n = n.clone();
            n.id = id;
            n.premises = n.premises.iter().map(|p| renum[p]).collect();
            n.step = renumber(&n.step, &renum);
            nodes.push(n);
        }
        ProofTrace { nodes }
    }

    pub fn verdict(&self) -> Verdict {
        best_node(&self.nodes)
            .and_then(|i| self.nodes[i].output.verdict().cloned())
            .unwrap_or(Verdict::Unconstrained)
    }
}

fn best_node(nodes: &[TraceNode]) -> Option<usize> {
    let mut best: Option<(u8, usize)> = None;
    for n in nodes {
        if let Some(v) = n.output.verdict() {
            let s = v.strength();
            if s > 0 && best.is_none_or(|(b, _)| s > b) {
                best = Some((s, n.id));
            }
        }
    }
    best.map(|b| b.1)
}

fn renumber(step: &Step, m: &HashMap<usize, usize>) -> Step {
    use Step::*;
    let r = |i: &usize| m[i];
    match step.clone() {
        Hypothesis(h) => Hypothesis(h),
        Compose { f, g } => Compose { f: r(&f), g: r(&g) },
        Descend { f, gf } => Descend { f: r(&f), gf: r(&gf) },
        Inverse { f } => Inverse { f: r(&f) },
        Addition { f, law, omega1, omega2 } => Addition { f: r(&f), law, omega1, omega2 },
        WidenPower { f } => WidenPower { f: r(&f) },
        GlobalLeibniz { f } => GlobalLeibniz { f: r(&f) },
        LeibnizVerdict { f } => LeibnizVerdict { f: r(&f) },
        PowerVerdict { f } => PowerVerdict { f: r(&f) },
        Classify { f } => Classify { f: r(&f) },
        Symmetrize { f } => Symmetrize { f: r(&f) },
        ConicD1 { f, u, v } => ConicD1 { f: r(&f), u, v },
        Bor { f, d1, u } => Bor { f: r(&f), d1: r(&d1), u },
        Substitute { f, g } => Substitute { f: r(&f), g: r(&g) },
        Diagonal { f, d1 } => Diagonal { f: r(&f), d1: r(&d1) },
        Reciprocal { f, lambda, mu } => Reciprocal { f: r(&f), lambda, mu },
        Reflect { f, lambda, mu, u } => Reflect { f: r(&f), lambda, mu, u },
        Square { f, d1, lambda, mu } => Square { f: r(&f), d1: r(&d1), lambda, mu },
    }
}

/// Append-only node store.
#[derive(Clone, Debug)]
pub struct Store {
    nodes: Vec<TraceNode>,
    max_depth: usize,
    depth_exceeded: bool,
}

impl Store {
    pub fn new(max_depth: usize) -> Self {
        Store {
            nodes: Vec::new(),
            max_depth,
            depth_exceeded: false,
        }
    }

    pub fn nodes(&self) -> &[TraceNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn depth_exceeded(&self) -> bool {
        self.depth_exceeded
    }

    pub fn node(&self, id: usize) -> Res<&TraceNode> {
        self.nodes.get(id).ok_or(DeductionError::UnknownFact(id))
    }

    pub fn fact(&self, id: usize) -> Res<&Fact> {
        self.node(id)?
            .output
            .fact()
            .ok_or_else(|| DeductionError::InvalidStep(format!("node {id} holds a verdict, not a fact")))
    }

    pub fn find(&self, out: &Output) -> Option<usize> {
        self.nodes.iter().position(|n| &n.output == out)
    }

    pub fn best_verdict(&self) -> Verdict {
        best_node(&self.nodes)
            .and_then(|i| self.nodes[i].output.verdict().cloned())
            .unwrap_or(Verdict::Unconstrained)
    }

    fn law_hint(&self, step: &Step) -> Option<Law> {
        if let Step::Addition { law, .. } = step {
            return Some(*law);
        }
        let first = *step.premises().first()?;
        match self.fact(first).ok()?.func {
            Func::Law(l) | Func::Sym(l) => Some(l),
            _ => None,
        }
    }

    /// Executes `step` and appends its conclusion. Returns the id of the
    /// (possibly pre-existing) node, or `None` when the depth bound is hit.
    pub fn apply(&mut self, step: Step) -> Res<Option<usize>> {
        let premises = step.premises();
        let mut outs = Vec::with_capacity(premises.len());
        let mut depth = 0;
        for &p in &premises {
            let n = self.node(p)?;
            outs.push(&n.output);
            depth = depth.max(n.depth + 1);
        }
        let (output, note) = execute(&step, &outs)?;
        if let Some(id) = self.find(&output) {
            return Ok(Some(id));
        }
        if depth > self.max_depth {
            self.depth_exceeded = true;
            return Ok(None);
        }
        let (rule, citation) = rule_of(&step, self.law_hint(&step));
        let id = self.nodes.len();
        self.nodes.push(TraceNode {
            id,
            rule,
            premises,
            step,
            output,
            citation: citation.to_string(),
            note,
            depth,
        });
        Ok(Some(id))
    }

    fn try_apply(&mut self, step: Step) {
        // a failed precondition only means the rule does not fire here
        let _ = self.apply(step);
    }
}

/// Result of `run_deduction`.
#[derive(Clone, Debug)]
pub struct Deduction {
    pub verdict: Verdict,
    pub trace: ProofTrace,
    pub depth_exceeded: bool,
    pub goal_met: bool,
}

fn fire(store: &mut Store, id: usize) -> Res<()> {
    let fact = match store.node(id)?.output.fact() {
        Some(f) => f.clone(),
        None => return Ok(()),
    };
    // Inv-ii, with this fact as either premise
    let earlier: Vec<(usize, Fact)> = store.nodes()[..id]
        .iter()
        .filter_map(|n| n.output.fact().map(|f| (n.id, f.clone())))
        .collect();
    for (j, other) in &earlier {
        if let Func::Compose(inner, _) = &fact.func {
            if **inner == other.func {
                store.try_apply(Step::Descend { f: *j, gf: id });
            }
        }
        if let Func::Compose(inner, _) = &other.func {
            if **inner == fact.func {
                store.try_apply(Step::Descend { f: id, gf: *j });
            }
        }
    }
    match &fact.func {
        Func::Elem(e) => {
            match Law::for_function(*e) {
                None => store.try_apply(Step::Inverse { f: id }),
                Some(law) => {
                    // a failed row is reported by the dispatcher, not here
                    let _ = maksa::stage_addition(store, id, law);
                }
            }
        }
        Func::Power(r) if !r.is_zero() && !r.is_one() => {
            let widened = localize_power(&fact).ok();
            if widened.as_ref() == Some(&fact) {
                store.try_apply(Step::PowerVerdict { f: id });
            } else {
                store.try_apply(Step::WidenPower { f: id });
            }
        }
        Func::Mul | Func::Law(Law::Exp) => {
            if fact.domain == super::Domain::plane() {
                store.try_apply(Step::LeibnizVerdict { f: id });
            } else {
                store.try_apply(Step::GlobalLeibniz { f: id });
            }
        }
        Func::Law(_) | Func::Sym(_) => {
            let _ = maksa::stage_law(store, id);
        }
        Func::Laurent(_) => store.try_apply(Step::Classify { f: id }),
        _ => {}
    }
    Ok(())
}

/// Applies the rules to saturation and returns the strongest verdict.
/// Rules fire per node in the order Inv-ii, Inv-iii, CorAdd, Nisalt,
/// LRext, Nis, the case-specific steps, PQ-case.
pub fn run_deduction(hyps: &[Fact], goal: &Verdict, cfg: &Config) -> Res<Deduction> {
    let mut store = Store::new(cfg.max_depth);
    for h in hyps {
        store.apply(Step::Hypothesis(h.clone()))?;
    }
    let mut cursor = 0;
    while cursor < store.len() && store.len() < cfg.max_nodes {
        if store.best_verdict() == Verdict::StandardDerivation {
            break;
        }
        fire(&mut store, cursor)?;
        cursor += 1;
    }
    let verdict = store.best_verdict();
    let goal_met = verdict.strength() >= goal.strength();
    Ok(Deduction {
        verdict,
        depth_exceeded: store.depth_exceeded(),
        trace: ProofTrace { nodes: store.nodes },
        goal_met,
    })
}

/// Re-executes every node on a fresh store and checks that each produces
/// the recorded output. Returns the replayed verdict.
pub fn replay(trace: &ProofTrace) -> Res<Verdict> {
    let mut store = Store::new(usize::MAX);
    for n in &trace.nodes {
        match store.apply(n.step.clone())? {
            Some(id) if id == n.id && store.node(id)?.output == n.output => {}
            _ => return Err(DeductionError::ReplayMismatch(n.id)),
        }
    }
    Ok(store.best_verdict())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::{Domain, Iv};
    use crate::exactnum::{int, rat};
    use crate::laurent::LaurentPoly;

    fn iv(a: i64, b: i64) -> Domain {
        Domain::interval(Iv::rational(int(a), int(b)).unwrap())
    }

    #[test]
    fn power_two_via_nisalt_and_nis() {
        let h = Fact::new(Func::Power(int(2)), iv(5, 6)).unwrap();
        let d = run_deduction(&[h], &Verdict::StandardDerivation, &Config::default()).unwrap();
        assert_eq!(d.verdict, Verdict::StandardDerivation);
        let rules: Vec<_> = d.trace.nodes.iter().map(|n| n.rule.as_str()).collect();
        assert_eq!(rules, ["hypothesis", "Nisalt", "Nis"]);
        assert_eq!(replay(&d.trace).unwrap(), Verdict::StandardDerivation);
    }

    #[test]
    fn linear_laurent_gives_d1_zero() {
        let p = LaurentPoly::from_terms([(0, int(1)), (1, int(1))]);
        let h = Fact::new(Func::Laurent(p), iv(1, 2)).unwrap();
        let d = run_deduction(&[h], &Verdict::StandardDerivation, &Config::default()).unwrap();
        assert_eq!(d.verdict, Verdict::D1Zero);
        assert!(!d.goal_met);
    }

    #[test]
    fn empty_is_unconstrained() {
        let d = run_deduction(&[], &Verdict::StandardDerivation, &Config::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Unconstrained);
        assert!(d.trace.nodes.is_empty());
    }

    #[test]
    fn depth_bound_is_reported() {
        let h = Fact::new(Func::Power(rat(1, 2)), iv(1, 4)).unwrap();
        let cfg = Config { max_depth: 1, ..Config::default() };
        let d = run_deduction(&[h], &Verdict::StandardDerivation, &cfg).unwrap();
        assert!(d.depth_exceeded);
        assert_eq!(d.verdict, Verdict::Unconstrained);
    }
}
