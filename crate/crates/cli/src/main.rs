use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use deriv_closure_cli::{execute, CommandName, Options, DEFAULT_SAMPLES, DEFAULT_TOL, EXIT_ERROR};

/// Exact deduction calculus for additive functions with derivation properties.
///
/// Without a subcommand the input must be a full problem spec carrying a
/// `command` field. With a subcommand that field may be omitted.
#[derive(Parser)]
#[command(name = "deriv-closure", version)]
struct Cli {
    /// Read the spec from FILE instead of standard input.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Maximum derivation depth for deduce and maksa.
    #[arg(long, global = true, value_name = "N")]
    trace_depth: Option<usize>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Trichotomy for Q'(u) d(P(u)) = P'(u) d(Q(u)).
    ClassifyPq,
    /// Three-way split for a derivated polynomial.
    ClassifyPoly,
    /// Rational point of U, V or W near x.
    DensePoint,
    /// Forward-chain from hypotheses toward a goal.
    Deduce,
    /// Dispatch a function of the addition-theorem catalog on ]alpha, beta[.
    Maksa {
        /// exp, sinh, cosh, tanh, coth, sin, cos, tan or cot.
        #[arg(requires_all = ["alpha", "beta"])]
        r#fn: Option<String>,
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Floating-point checks of the addition formulas and coefficient identities.
    VerifyIdentities {
        /// Mak-i .. Mak-ix, bor or all.
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn spec_from_args(pairs: &[(&str, Value)]) -> String {
    let m: Map<String, Value> = pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    Value::Object(m).to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (expected, inline) = match &cli.command {
        None => (None, None),
        Some(Cmd::ClassifyPq) => (Some(CommandName::ClassifyPq), None),
        Some(Cmd::ClassifyPoly) => (Some(CommandName::ClassifyPoly), None),
        Some(Cmd::DensePoint) => (Some(CommandName::DensePoint), None),
        Some(Cmd::Deduce) => (Some(CommandName::Deduce), None),
        Some(Cmd::Maksa { r#fn, alpha, beta }) => {
            let inline = match (r#fn, alpha, beta) {
                (Some(f), Some(a), Some(b)) => Some(spec_from_args(&[
                    ("fn", json!(f)),
                    ("alpha", json!(a)),
                    ("beta", json!(b)),
                ])),
                _ => None,
            };
            (Some(CommandName::Maksa), inline)
        }
        Some(Cmd::VerifyIdentities { case, samples, tol }) => (
            Some(CommandName::VerifyIdentities),
            Some(spec_from_args(&[
                ("case", json!(case)),
                ("samples", json!(samples)),
                ("tol", json!(tol)),
            ])),
        ),
    };
    let text = match inline {
        Some(t) => t,
        None => match read_input(cli.input.as_ref()) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("deriv-closure: cannot read input: {e}");
                return ExitCode::from(EXIT_ERROR as u8);
            }
        },
    };
    let opts = Options {
        trace_depth: cli.trace_depth,
    };
    let (code, out) = execute(&text, expected, &opts, cli.pretty);
    if io::stdout().write_all(out.as_bytes()).is_err() {
        return ExitCode::from(EXIT_ERROR as u8);
    }
    ExitCode::from(code as u8)
}
