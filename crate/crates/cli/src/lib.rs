//! Problem-spec parsing and dispatch behind the `deriv-closure` binary.
//!
//! A spec is one JSON object whose `command` field selects the operation;
//! the remaining fields are that command's payload. Every rational is an
//! exact `"num/den"` string. Output is a JSON value with sorted keys.

use std::fmt;

use serde::de::{self, Deserializer, IgnoredAny};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use deriv_closure::conic::{dense_point, ConicError, ConicSet};
use deriv_closure::deduction::{
    maksa_verdict, run_deduction, Config, DeductionError, Fact, Verdict,
};
use deriv_closure::elementary::Law;
use deriv_closure::exactnum::{rational_string, BigRational, OpenInterval};
use deriv_closure::laurent::{classify_polynomial, classify_pq, LaurentPoly};
use deriv_closure::numcheck::{verify_addition_identity, verify_bor_identity, IdentityReport};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for internal errors and rejected specs.
pub const EXIT_ERROR: i32 = 1;
/// Exit status when a hypothesis fails or a rule is inapplicable.
pub const EXIT_INAPPLICABLE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    ClassifyPq,
    ClassifyPoly,
    DensePoint,
    Deduce,
    Maksa,
    VerifyIdentities,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::ClassifyPq => "classify-pq",
            CommandName::ClassifyPoly => "classify-poly",
            CommandName::DensePoint => "dense-point",
            CommandName::Deduce => "deduce",
            CommandName::Maksa => "maksa",
            CommandName::VerifyIdentities => "verify-identities",
        }
    }
}

impl fmt::Display for CommandName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which identity reports `verify-identities` produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityCase {
    All,
    Bor,
    Row(Law),
}

/// A validated problem.
#[derive(Clone, Debug)]
pub enum ProblemSpec {
    ClassifyPq {
        p: LaurentPoly,
        q: LaurentPoly,
        interval: Option<OpenInterval>,
    },
    ClassifyPoly {
        p: LaurentPoly,
        interval: OpenInterval,
    },
    DensePoint {
        set: ConicSet,
        x: BigRational,
        eps: BigRational,
    },
    Deduce {
        hypotheses: Vec<Fact>,
        goal: Verdict,
    },
    Maksa {
        law: Law,
        alpha: BigRational,
        beta: BigRational,
    },
    VerifyIdentities {
        case: IdentityCase,
        samples: usize,
        tol: f64,
    },
}

impl ProblemSpec {
    pub fn command(&self) -> CommandName {
        match self {
            ProblemSpec::ClassifyPq { .. } => CommandName::ClassifyPq,
            ProblemSpec::ClassifyPoly { .. } => CommandName::ClassifyPoly,
            ProblemSpec::DensePoint { .. } => CommandName::DensePoint,
            ProblemSpec::Deduce { .. } => CommandName::Deduce,
            ProblemSpec::Maksa { .. } => CommandName::Maksa,
            ProblemSpec::VerifyIdentities { .. } => CommandName::VerifyIdentities,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at line {line}, column {column}: {rule}")]
    SchemaError {
        line: usize,
        column: usize,
        rule: String,
    },
}

impl SpecError {
    fn from_json(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        match e.classify() {
            serde_json::error::Category::Data => SpecError::SchemaError {
                line,
                column,
                rule: strip_position(&e.to_string()),
            },
            _ => SpecError::ParseError {
                line,
                column,
                message: strip_position(&e.to_string()),
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, line, column, message) = match self {
            SpecError::ParseError { line, column, message } => ("parse-error", line, column, message),
            SpecError::SchemaError { line, column, rule } => ("schema-error", line, column, rule),
        };
        json!({"error": {"kind": kind, "line": line, "column": column, "message": message}})
    }
}

/// serde_json appends " at line L column C"; the position is kept separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Parse a spec whose `command` field names the operation.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    parse_spec_as(text, None)
}

/// Parse a spec for a known command; `command` may then be omitted but must
/// agree when present.
pub fn parse_spec_as(text: &str, expected: Option<CommandName>) -> Result<ProblemSpec, SpecError> {
    #[derive(Deserialize)]
    struct Head {
        command: Option<CommandName>,
    }
    serde_json::from_str::<Value>(text).map_err(SpecError::from_json)?;
    let head: Head = serde_json::from_str(text).map_err(SpecError::from_json)?;
    let command = match (head.command, expected) {
        (Some(c), Some(e)) if c != e => {
            return Err(schema_at_start(text, format!("command `{c}` does not match subcommand `{e}`")))
        }
        (Some(c), _) | (None, Some(c)) => c,
        (None, None) => return Err(schema_at_start(text, "missing field `command`".into())),
    };
    let spec = match command {
        CommandName::ClassifyPq => {
            let p: PqPayload = from_text(text)?;
            ProblemSpec::ClassifyPq {
                p: p.p,
                q: p.q,
                interval: p.interval,
            }
        }
        CommandName::ClassifyPoly => {
            let p: PolyPayload = from_text(text)?;
            ProblemSpec::ClassifyPoly {
                p: p.p,
                interval: p.interval.unwrap_or_else(OpenInterval::real_line),
            }
        }
        CommandName::DensePoint => {
            let p: DensePayload = from_text(text)?;
            ProblemSpec::DensePoint {
                set: p.set,
                x: p.x,
                eps: p.eps,
            }
        }
        CommandName::Deduce => {
            let p: DeducePayload = from_text(text)?;
            ProblemSpec::Deduce {
                hypotheses: p.hypotheses,
                goal: p.goal,
            }
        }
        CommandName::Maksa => {
            let p: MaksaPayload = from_text(text)?;
            ProblemSpec::Maksa {
                law: p.law,
                alpha: p.alpha,
                beta: p.beta,
            }
        }
        CommandName::VerifyIdentities => {
            let p: IdentitiesPayload = from_text(text)?;
            ProblemSpec::VerifyIdentities {
                case: p.case,
                samples: p.samples,
                tol: p.tol,
            }
        }
    };
    Ok(spec)
}

fn from_text<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, SpecError> {
    serde_json::from_str(text).map_err(SpecError::from_json)
}

/// Position of the first non-blank character.
fn schema_at_start(text: &str, rule: String) -> SpecError {
    let mut line = 1;
    let mut column = 1;
    for ch in text.chars() {
        match ch {
            '\n' => {
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => column += 1,
            _ => break,
        }
    }
    SpecError::SchemaError { line, column, rule }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PqPayload {
    #[serde(default, rename = "command")]
    _command: Option<IgnoredAny>,
    #[serde(rename = "P")]
    p: LaurentPoly,
    #[serde(rename = "Q")]
    q: LaurentPoly,
    #[serde(default, deserialize_with = "interval_avoiding_zero")]
    interval: Option<OpenInterval>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyPayload {
    #[serde(default, rename = "command")]
    _command: Option<IgnoredAny>,
    #[serde(rename = "P", deserialize_with = "polynomial")]
    p: LaurentPoly,
    #[serde(default)]
    interval: Option<OpenInterval>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensePayload {
    #[serde(default, rename = "command")]
    _command: Option<IgnoredAny>,
    set: ConicSet,
    #[serde(with = "rational_string")]
    x: BigRational,
    #[serde(with = "rational_string")]
    eps: BigRational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeducePayload {
    #[serde(default, rename = "command")]
    _command: Option<IgnoredAny>,
    #[serde(deserialize_with = "facts")]
    hypotheses: Vec<Fact>,
    #[serde(default = "standard", deserialize_with = "goal")]
    goal: Verdict,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MaksaPayload {
    #[serde(default, rename = "command")]
    _command: Option<IgnoredAny>,
    #[serde(rename = "fn", deserialize_with = "law_by_name")]
    law: Law,
    #[serde(with = "rational_string")]
    alpha: BigRational,
    #[serde(with = "rational_string")]
    beta: BigRational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdentitiesPayload {
    #[serde(default, rename = "command")]
    _command: Option<IgnoredAny>,
    #[serde(default = "all_cases", deserialize_with = "identity_case")]
    case: IdentityCase,
    #[serde(default = "default_samples", deserialize_with = "positive_samples")]
    samples: usize,
    #[serde(default = "default_tol", deserialize_with = "positive_tol")]
    tol: f64,
}

fn standard() -> Verdict {
    Verdict::StandardDerivation
}

fn all_cases() -> IdentityCase {
    IdentityCase::All
}

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-9;

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn interval_avoiding_zero<'de, D: Deserializer<'de>>(d: D) -> Result<Option<OpenInterval>, D::Error> {
    let iv = OpenInterval::deserialize(d)?;
    if iv.contains_zero() {
        return Err(de::Error::custom(format!("interval {iv} must not contain 0")));
    }
    Ok(Some(iv))
}

fn polynomial<'de, D: Deserializer<'de>>(d: D) -> Result<LaurentPoly, D::Error> {
    let p = LaurentPoly::deserialize(d)?;
    if p.is_zero() {
        return Err(de::Error::custom("P must be nonzero"));
    }
    if p.has_negative_exponents() {
        return Err(de::Error::custom("P must be a polynomial (all exponents k >= 0)"));
    }
    Ok(p)
}

fn facts<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Fact>, D::Error> {
    let raw = Vec::<Value>::deserialize(d)?;
    raw.iter()
        .enumerate()
        .map(|(i, v)| Fact::from_json(v).map_err(|e| de::Error::custom(format!("hypothesis {i}: {e}"))))
        .collect()
}

fn goal<'de, D: Deserializer<'de>>(d: D) -> Result<Verdict, D::Error> {
    String::deserialize(d)?.parse().map_err(de::Error::custom)
}

/// Legal ids are the nine function names, nothing else.
pub fn parse_law_name(s: &str) -> Result<Law, String> {
    Law::ALL
        .into_iter()
        .find(|l| l.function().name() == s)
        .ok_or_else(|| {
            format!("unknown fn id `{s}` (legal ids are exp, sinh, cosh, tanh, coth, sin, cos, tan, cot)")
        })
}

fn law_by_name<'de, D: Deserializer<'de>>(d: D) -> Result<Law, D::Error> {
    parse_law_name(&String::deserialize(d)?).map_err(de::Error::custom)
}

/// `all`, `bor`, or a row id such as `Mak-(iv)`, `Mak-iv`, `iv`.
pub fn parse_identity_case(s: &str) -> Result<IdentityCase, String> {
    match s {
        "all" => Ok(IdentityCase::All),
        "bor" => Ok(IdentityCase::Bor),
        _ => {
            let t = s.strip_prefix("Mak-").unwrap_or(s);
            let t = t.trim_start_matches('(').trim_end_matches(')');
            Law::ALL
                .into_iter()
                .find(|l| l.roman() == t)
                .map(IdentityCase::Row)
                .ok_or_else(|| format!("unknown identity case `{s}` (expected Mak-i .. Mak-ix, bor or all)"))
        }
    }
}

fn identity_case<'de, D: Deserializer<'de>>(d: D) -> Result<IdentityCase, D::Error> {
    parse_identity_case(&String::deserialize(d)?).map_err(de::Error::custom)
}

fn positive_samples<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
    match usize::deserialize(d)? {
        0 => Err(de::Error::custom("samples must be at least 1")),
        n => Ok(n),
    }
}

fn positive_tol<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    let t = f64::deserialize(d)?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(de::Error::custom("tol must be a positive finite number"))
    }
}

/// Run-time knobs that are not part of the spec.
#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Overrides the engine's maximum derivation depth.
    pub trace_depth: Option<usize>,
}

impl Options {
    fn config(&self) -> Config {
        let mut cfg = Config::default();
        if let Some(d) = self.trace_depth {
            cfg.max_depth = d;
        }
        cfg
    }
}

/// Exit status plus the JSON document to print.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { code: EXIT_OK, json }
    }

    fn inapplicable(json: Value) -> Self {
        Outcome {
            code: EXIT_INAPPLICABLE,
            json,
        }
    }

    fn internal(err: impl fmt::Display) -> Self {
        Outcome {
            code: EXIT_ERROR,
            json: json!({"error": {"kind": "internal", "message": err.to_string()}}),
        }
    }
}

pub fn run(spec: &ProblemSpec, opts: &Options) -> Outcome {
    match spec {
        ProblemSpec::ClassifyPq { p, q, .. } => match serde_json::to_value(classify_pq(p, q)) {
            Ok(v) => Outcome::ok(v),
            Err(e) => Outcome::internal(e),
        },
        ProblemSpec::ClassifyPoly { p, interval } => match classify_polynomial(p, interval) {
            Ok(v) => {
                let degree = p.degree().unwrap_or(0);
                let case = match degree {
                    0 => "i",
                    1 => "ii",
                    _ => "iii",
                };
                Outcome::ok(json!({"case": case, "degree": degree, "verdict": v.tag()}))
            }
            Err(e) => Outcome::internal(e),
        },
        ProblemSpec::DensePoint { set, x, eps } => match dense_point(*set, x, eps) {
            Ok(cert) => match serde_json::to_value(&cert) {
                Ok(v) => Outcome::ok(v),
                Err(e) => Outcome::internal(e),
            },
            Err(ConicError::PreconditionViolated { failed, .. }) => Outcome::inapplicable(json!({
                "verdict": "inapplicable",
                "failed": failed,
            })),
            Err(e) => Outcome::internal(e),
        },
        ProblemSpec::Deduce { hypotheses, goal } => match run_deduction(hypotheses, goal, &opts.config()) {
            Ok(d) => {
                let mut m = Map::new();
                m.insert("verdict".into(), json!(d.verdict.tag()));
                if let Some(r) = d.verdict.reason() {
                    m.insert("reason".into(), json!(r));
                }
                m.insert("goal_met".into(), json!(d.goal_met));
                m.insert("depth_exceeded".into(), json!(d.depth_exceeded));
                m.insert("trace".into(), d.trace.to_json());
                let v = Value::Object(m);
                if d.goal_met {
                    Outcome::ok(v)
                } else {
                    Outcome::inapplicable(v)
                }
            }
            Err(e) => deduction_failure(e),
        },
        ProblemSpec::Maksa { law, alpha, beta } => match maksa_verdict(*law, alpha, beta, &opts.config()) {
            Ok(out) => {
                let mut m = Map::new();
                m.insert("case".into(), json!(law.case_id()));
                m.insert("verdict".into(), json!(out.verdict.tag()));
                match out.failed {
                    Some(f) => {
                        m.insert("failed".into(), json!(f));
                        Outcome::inapplicable(Value::Object(m))
                    }
                    None => {
                        m.insert("trace".into(), out.trace.to_json());
                        if out.verdict == Verdict::StandardDerivation {
                            Outcome::ok(Value::Object(m))
                        } else {
                            Outcome::inapplicable(Value::Object(m))
                        }
                    }
                }
            }
            Err(e) => deduction_failure(e),
        },
        ProblemSpec::VerifyIdentities { case, samples, tol } => {
            let reports: Vec<IdentityReport> = match case {
                IdentityCase::All => Law::ALL
                    .into_iter()
                    .map(|l| verify_addition_identity(l, *samples, *tol))
                    .chain([verify_bor_identity(*samples, *tol)])
                    .collect(),
                IdentityCase::Bor => vec![verify_bor_identity(*samples, *tol)],
                IdentityCase::Row(l) => vec![verify_addition_identity(*l, *samples, *tol)],
            };
            let pass = reports.iter().all(|r| r.pass);
            match serde_json::to_value(&reports) {
                Ok(v) => {
                    let doc = json!({"pass": pass, "reports": v});
                    if pass {
                        Outcome::ok(doc)
                    } else {
                        Outcome::inapplicable(doc)
                    }
                }
                Err(e) => Outcome::internal(e),
            }
        }
    }
}

fn deduction_failure(e: DeductionError) -> Outcome {
    match e {
        DeductionError::HypothesisFailed { row, failed } => Outcome::inapplicable(json!({
            "verdict": "inapplicable",
            "case": row,
            "failed": failed,
        })),
        e => Outcome::internal(e),
    }
}

/// Canonical text form: sorted keys, trailing newline.
pub fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("serializing a JSON value cannot fail");
    s.push('\n');
    s
}

/// Parse, run and render in one step.
pub fn execute(text: &str, expected: Option<CommandName>, opts: &Options, pretty: bool) -> (i32, String) {
    match parse_spec_as(text, expected) {
        Ok(spec) => {
            let out = run(&spec, opts);
            (out.code, render(&out.json, pretty))
        }
        Err(e) => (EXIT_ERROR, render(&e.to_json(), pretty)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let pq = r#"{"command":"classify-pq","P":{"terms":[{"k":2,"c":"1"}]},"Q":{"terms":[{"k":1,"c":"1"}]}}"#;
        assert_eq!(parse_spec(pq).unwrap().command(), CommandName::ClassifyPq);
        let dp = r#"{"command":"dense-point","set":"V","x":"3/2","eps":"1/4"}"#;
        assert_eq!(parse_spec(dp).unwrap().command(), CommandName::DensePoint);
        let bad = r#"{"command":"maksa","fn":"cosine","alpha":"1","beta":"2"}"#;
        match parse_spec(bad) {
            Err(SpecError::SchemaError { line, column, rule }) => {
                assert_eq!(line, 1);
                assert!(column > 20, "column {column}");
                assert!(rule.contains("unknown fn id `cosine`"), "{rule}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagnostics_carry_positions() {
        match parse_spec("{\n  \"command\": \"maksa\",\n  \"fn\": \"exp\",\n  \"alpha\": 1\n}") {
            Err(SpecError::SchemaError { line: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_spec("{\"command\": \"deduce\",,}") {
            Err(SpecError::ParseError { line: 1, column, .. }) => assert_eq!(column, 22),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_spec("{}"), Err(SpecError::SchemaError { .. })));
        assert!(matches!(
            parse_spec(r#"{"command":"dense-point","set":"V","x":"3/2","eps":"1/4","extra":1}"#),
            Err(SpecError::SchemaError { .. })
        ));
        assert!(matches!(
            parse_spec_as(r#"{"command":"maksa"}"#, Some(CommandName::Deduce)),
            Err(SpecError::SchemaError { .. })
        ));
    }

    #[test]
    fn interval_must_avoid_zero() {
        let text = r#"{"command":"classify-pq","P":{"terms":[{"k":2,"c":"1"}]},"Q":{"terms":[{"k":1,"c":"1"}]},"interval":{"lo":"-1","hi":"1"}}"#;
        assert!(matches!(parse_spec(text), Err(SpecError::SchemaError { .. })));
    }

    #[test]
    fn case_names() {
        assert_eq!(parse_identity_case("Mak-(iv)").unwrap(), IdentityCase::Row(Law::Tanh));
        assert_eq!(parse_identity_case("Mak-ix").unwrap(), IdentityCase::Row(Law::Cot));
        assert_eq!(parse_identity_case("bor").unwrap(), IdentityCase::Bor);
        assert!(parse_identity_case("Mak-x").is_err());
        assert!(parse_law_name("tan").is_ok());
        assert!(parse_law_name("iv").is_err());
    }

    #[test]
    fn run_examples() {
        let (code, out) = execute(r#"{"command":"maksa","fn":"cos","alpha":"1","beta":"2"}"#, None, &Options::default(), false);
        assert_eq!(code, EXIT_INAPPLICABLE);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "inapplicable");
        assert_eq!(v["failed"], "pi<beta");

        let (code, out) = execute(r#"{"command":"maksa","fn":"exp","alpha":"0","beta":"1"}"#, None, &Options::default(), false);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "standard-derivation");
        assert!(!v["trace"].as_array().unwrap().is_empty());
    }
}
