//! The `graphknot` command line.
//!
//! Output is line oriented and deterministic. Exit status 0 means success,
//! 1 a domain error (malformed expression, invalid decomposition), 2 a usage
//! or parse error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::batch::validate_enumeration;
use crate::expr::{kit_of, level, normalize, parse_expr, GraphKit, KnotExpr, ParseExprError};
use crate::invariants::{alexander, genus};
use crate::oracle::EnumerationBudget;
use crate::rhd::{build, classify_pair, extract, parse_rhd, validate, ClassifyError, ExtractError, Rhd};

#[derive(Parser, Debug)]
#[command(name = "graphknot", version, about = "Graph knots and round handle decompositions of the 3-sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ExprArg {
    /// Knot expression, e.g. "sum(cable(2,3,U),cable(2,5,U))"
    #[arg(short = 'e', long = "expr")]
    pub expr: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Print the canonical form
    Normalize(ExprArg),
    /// Print the Alexander polynomial and the genus
    Invariants(ExprArg),
    /// Print the layer of the cabling/sum hierarchy
    Level(ExprArg),
    /// Print the graph kit of the canonical form
    Kit(ExprArg),
    /// Write a decomposition realizing the expression at its first source
    Build {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Check a decomposition file; violations are listed one per line
    Validate { rhd: PathBuf },
    /// Extract the knot expression and graph kit of a critical knot
    Extract {
        rhd: PathBuf,
        #[arg(short = 'k', long = "knot")]
        knot: String,
    },
    /// Link type of two unknotted critical knots
    Classify { rhd: PathBuf, first: String, second: String },
    /// Validate every decomposition within a budget and print a tally
    Enumerate {
        #[arg(long = "max-saddles", default_value_t = 2)]
        max_saddles: usize,
        #[arg(long = "coeff-bound", default_value_t = 3)]
        coeff_bound: i64,
        #[arg(long = "max-depth", default_value_t = 4)]
        max_depth: usize,
        #[arg(long = "seed", default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: u8, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn expr_of(text: &str) -> Result<KnotExpr, Outcome> {
    match parse_expr(text) {
        Ok(e) => Ok(e),
        Err(ParseExprError::Syntax(p)) => Err(Outcome::fail(2, format!("parse error at {p}"))),
        Err(ParseExprError::Malformed(m)) => Err(Outcome::fail(1, format!("MalformedExpression: {m}"))),
    }
}

fn rhd_of(path: &PathBuf) -> Result<Rhd, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::fail(2, format!("{}: {e}", path.display())))?;
    parse_rhd(&text).map_err(|e| Outcome::fail(2, format!("{}: {e}", path.display())))
}

fn malformed(e: impl std::fmt::Display) -> Outcome {
    Outcome::fail(1, format!("MalformedExpression: {e}"))
}

/// Element lines `L<n> <expr>`, then `gamma` lines for every nontrivial
/// element and the root.
pub fn format_kit(kit: &GraphKit, out: &mut String) {
    let labels = |ls: &[crate::expr::Label]| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
    for (l, e) in &kit.elements {
        let _ = writeln!(out, "{l} {e}");
    }
    for (l, g) in &kit.gamma {
        let _ = writeln!(out, "gamma {l} -> {}", labels(g));
    }
    if !kit.root.is_empty() {
        let _ = writeln!(out, "gamma root -> {}", labels(&kit.root));
    }
}

fn extract_error(e: ExtractError) -> Outcome {
    match e {
        ExtractError::InvalidDecomposition(vs) => {
            let mut s = String::from("InvalidDecomposition\n");
            for v in vs {
                let _ = writeln!(s, "{v}");
            }
            Outcome::fail(1, s)
        }
        other => Outcome::fail(1, other.to_string()),
    }
}

fn try_run(cmd: &Command) -> Result<String, Outcome> {
    let mut out = String::new();
    match cmd {
        Command::Normalize(a) => {
            let e = normalize(&expr_of(&a.expr)?).map_err(malformed)?;
            let _ = writeln!(out, "{e}");
        }
        Command::Invariants(a) => {
            let e = expr_of(&a.expr)?;
            let poly = alexander(&e).map_err(|err| Outcome::fail(1, err.to_string()))?;
            let g = genus(&e).map_err(malformed)?;
            let _ = writeln!(out, "alexander {poly}");
            let _ = writeln!(out, "genus {g}");
        }
        Command::Level(a) => {
            let n = level(&expr_of(&a.expr)?).map_err(malformed)?;
            let _ = writeln!(out, "{n}");
        }
        Command::Kit(a) => {
            let kit = kit_of(&expr_of(&a.expr)?).map_err(malformed)?;
            format_kit(&kit, &mut out);
        }
        Command::Build { expr, output } => {
            let r = build(&expr_of(&expr.expr)?).map_err(|e| Outcome::fail(1, e.to_string()))?;
            std::fs::write(output, r.to_string())
                .map_err(|e| Outcome::fail(2, format!("{}: {e}", output.display())))?;
            let _ = writeln!(
                out,
                "sources {} saddles {} sinks {}",
                r.sources().count(),
                r.saddle_count(),
                r.sinks().count()
            );
        }
        Command::Validate { rhd } => {
            let r = rhd_of(rhd)?;
            match validate(&r) {
                Ok(()) => out.push_str("ok\n"),
                Err(vs) => {
                    let mut s = String::new();
                    for v in vs {
                        let _ = writeln!(s, "{v}");
                    }
                    return Err(Outcome {
                        code: 1,
                        stdout: s,
                        stderr: String::new(),
                    });
                }
            }
        }
        Command::Extract { rhd, knot } => {
            let r = rhd_of(rhd)?;
            let res = extract(&r, knot).map_err(extract_error)?;
            let _ = writeln!(out, "knot {} {}", res.target, res.expr);
            format_kit(&res.kit, &mut out);
            for (l, c) in &res.witness_r {
                let _ = writeln!(out, "tube {l} {c}");
            }
        }
        Command::Classify { rhd, first, second } => {
            let r = rhd_of(rhd)?;
            match classify_pair(&r, first, second) {
                Ok(t) => {
                    let _ = writeln!(out, "{t}");
                }
                Err(ClassifyError::Extract(e)) => return Err(extract_error(e)),
                Err(e) => return Err(Outcome::fail(1, e.to_string())),
            }
        }
        Command::Enumerate {
            max_saddles,
            coeff_bound,
            max_depth,
            seed,
        } => {
            if *coeff_bound < 1 || *max_depth < 1 {
                return Err(Outcome::fail(2, "coeff-bound and max-depth must be positive"));
            }
            let s = validate_enumeration(EnumerationBudget {
                max_saddles: *max_saddles,
                coeff_bound: *coeff_bound,
                max_depth: *max_depth,
                seed: *seed,
            });
            let _ = writeln!(out, "total {}", s.total);
            let _ = writeln!(out, "accepted {}", s.accepted);
            let _ = writeln!(out, "extraction_failures {}", s.extraction_failures);
            for (k, n) in &s.rejections {
                let _ = writeln!(out, "rejected {k} {n}");
            }
        }
    }
    Ok(out)
}

pub fn run(cmd: &Command) -> Outcome {
    match try_run(cmd) {
        Ok(s) => Outcome::ok(s),
        Err(o) => o,
    }
}
