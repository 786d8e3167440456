//! `cuntz`: apply operators to states, expand polynomials and run the
//! relation suites from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or parse error.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cuntz_core::parse::{parse_expr, parse_state};
use cuntz_core::suites::run_suite;
use cuntz_core::{poly_normal_form, RepSpec, StateVector, SuiteName, SuiteParams};

#[derive(Parser)]
#[command(
    name = "cuntz",
    version,
    about = "Exact fermion and boson operators inside the Cuntz algebra O2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator expression to a state.
    Apply {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        state: String,
        #[command(flatten)]
        out: Output,
    },
    /// Expand a polynomial expression into t_u t_v* monomials.
    Expand {
        #[arg(long)]
        expr: String,
        /// Working depth; defaults to the expression's intrinsic depth.
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Run a relation suite (or `all`).
    Check {
        /// Ignored by `fock` (always P(1)) and `wedge` (always P(12)).
        #[arg(long, default_value = "1")]
        rep: String,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = SuiteParams::default().n_max)]
        n_max: u32,
        #[arg(long, default_value_t = SuiteParams::default().m_max)]
        m_max: u32,
        #[arg(long, default_value_t = SuiteParams::default().depth)]
        depth: usize,
        #[command(flatten)]
        out: Output,
    },
    /// List the reference basis up to a prefix depth.
    ListBasis {
        #[arg(long)]
        rep: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Use Ω and √ in text output.
    #[arg(long)]
    unicode: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// An error that ends the run with exit code 2.
struct Usage(String);

fn parse_rep(text: &str) -> Result<Arc<RepSpec>, Usage> {
    text.parse::<RepSpec>()
        .map(Arc::new)
        .map_err(|e| Usage(format!("invalid --rep '{text}': {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn run(cli: Cli) -> Result<bool, Usage> {
    match cli.command {
        Command::Apply {
            rep,
            expr,
            state,
            out,
        } => {
            let rep = parse_rep(&rep)?;
            let e = parse_expr(&expr)
                .map_err(|err| Usage(format!("in --expr: {}", err.annotate(&expr))))?;
            let v = parse_state(&rep, &state)
                .map_err(|err| Usage(format!("in --state: {}", err.annotate(&state))))?;
            let result = cuntz_core::apply(&e, &v);
            match out.format {
                Format::Text => println!("{}", result.render(out.unicode)),
                Format::Json => println!("{}", to_json(&result.to_json())),
            }
            Ok(true)
        }
        Command::Expand { expr, depth, out } => {
            let e = parse_expr(&expr)
                .map_err(|err| Usage(format!("in --expr: {}", err.annotate(&expr))))?;
            let nf = poly_normal_form(&e, depth)
                .map_err(|err| Usage(format!("cannot expand '{expr}': {err}")))?;
            let minimal = nf.minimal();
            match out.format {
                Format::Text => println!("{}", minimal.render(out.unicode)),
                Format::Json => println!(
                    "{}",
                    to_json(&json!({"depth": nf.depth, "terms": nf.terms, "minimal": minimal}))
                ),
            }
            Ok(true)
        }
        Command::Check {
            rep,
            suite,
            n_max,
            m_max,
            depth,
            out,
        } => {
            let rep = parse_rep(&rep)?;
            let names = SuiteName::parse_selection(&suite).map_err(Usage)?;
            if n_max < 1 {
                return Err(Usage("--n-max must be at least 1".into()));
            }
            let params = SuiteParams {
                n_max,
                m_max,
                depth,
            };
            let reports: Vec<_> = names
                .into_iter()
                .map(|name| {
                    let rep = name.fixed_rep().unwrap_or_else(|| (*rep).clone());
                    run_suite(name, &rep, &params)
                })
                .collect();
            match out.format {
                Format::Text => {
                    for r in &reports {
                        print!("{}", r.render_text(out.unicode));
                    }
                }
                Format::Json if reports.len() == 1 => println!("{}", reports[0].to_json()),
                Format::Json => println!("{}", to_json(&reports)),
            }
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::ListBasis { rep, depth, out } => {
            let rep = parse_rep(&rep)?;
            let labels: Vec<String> = rep
                .enumerate_basis(depth)
                .into_iter()
                .map(|x| {
                    StateVector::basis(&rep, x).render(out.unicode && out.format == Format::Text)
                })
                .collect();
            match out.format {
                Format::Text => {
                    for l in &labels {
                        println!("{l}");
                    }
                }
                Format::Json => println!("{}", to_json(&labels)),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
