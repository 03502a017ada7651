//! `ahder`: analyze the algebras `A_h`, their derivations and `HH¹` from the
//! command line.

mod commands;
mod error;
mod report;
mod verify;

use std::process::ExitCode;

use ahder::ahstructure::parse_factor_list;
use ahder::AhContext;
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "ahder",
    version,
    about = "Derivations and HH^1 of the algebras A_h inside the Weyl algebra"
)]
struct Cli {
    /// The polynomial h in x, e.g. "x^2*(x-1)".
    #[arg(long = "h", global = true, value_name = "POLY")]
    h: Option<String>,
    /// Characteristic: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0, value_name = "P")]
    characteristic: u64,
    /// Factorization of h as "u1^a1,u2^a2,..."; verified before use.
    #[arg(long, global = true, value_name = "LIST")]
    factors: Option<String>,
    /// Degree bound for bounded searches (default 3p, or 24 in characteristic 0).
    #[arg(long, global = true, value_name = "N")]
    degree_bound: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of h and the structure of HH^1(A_h).
    Analyze,
    /// Bracket of two derivations read from stdin as a JSON array.
    Bracket,
    /// Decompose a derivation read from stdin and decide innerness.
    Classify,
    /// Test whether an element of A_1 normalizes A_h.
    Normalizer {
        /// Element in x and y, e.g. "x*y^2 + 1".
        element: String,
    },
    /// The center of A_h and of HH^1(A_h).
    Center,
    /// The automorphism exp(D_g): x -> x, yhat -> yhat + g.
    ExpAut {
        /// The polynomial g.
        g: String,
        /// Element of A_h to transport.
        #[arg(long)]
        apply: Option<String>,
    },
    /// Run the seeded property suites.
    Verify {
        /// Cases per property.
        #[arg(long, default_value_t = 25)]
        cases: usize,
    },
}

fn build_context(cli: &Cli) -> Result<(AhContext, usize), CliError> {
    let h = cli
        .h
        .as_deref()
        .ok_or_else(|| CliError::Usage("--h is required".into()))?;
    let mut ctx = AhContext::from_text(h, cli.characteristic)?;
    if let Some(list) = &cli.factors {
        let factors = parse_factor_list(list, ctx.field())?;
        ctx = ctx.with_factors(factors)?;
    }
    let default = match ctx.p() {
        Some(p) => 3 * p,
        None => 24,
    };
    let bound = cli.degree_bound.unwrap_or(default);
    if bound < ctx.deg_h() {
        return Err(CliError::Usage(format!(
            "--degree-bound {bound} is below deg h = {}",
            ctx.deg_h()
        )));
    }
    Ok((ctx, bound))
}

fn emit(report: &Report, output: Output) {
    match output {
        Output::Text => print!("{}", report.to_text()),
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).expect("reports serialize")
        ),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (ctx, bound) = build_context(cli)?;
    let report = match &cli.command {
        Command::Analyze => commands::analyze(&ctx, bound, cli.seed)?,
        Command::Bracket => commands::bracket(&ctx, commands::read_stdin_json()?)?,
        Command::Classify => commands::classify(&ctx, commands::read_stdin_json()?)?,
        Command::Normalizer { element } => commands::normalizer(&ctx, element)?,
        Command::Center => commands::center(&ctx)?,
        Command::ExpAut { g, apply } => commands::exp_aut(&ctx, g, apply.as_deref())?,
        Command::Verify { cases } => {
            let results = verify::run(&ctx, cli.seed, *cases);
            let mut r = Report::new("verify");
            r.row("h", ctx.h().to_string())
                .row("characteristic", ctx.field().characteristic())
                .row("seed", cli.seed);
            let mut failed = 0;
            let mut props = serde_json::Map::new();
            for p in &results {
                if p.passed != p.total {
                    failed += 1;
                }
                props.insert(
                    p.name.into(),
                    serde_json::json!({
                        "passed": p.passed,
                        "total": p.total,
                        "counterexample": p.counterexample,
                    }),
                );
            }
            match cli.output {
                Output::Json => {
                    r.row("properties", serde_json::Value::Object(props));
                }
                Output::Text => {
                    for p in &results {
                        r.row(p.name, format!("{}/{}", p.passed, p.total));
                        if let Some(c) = &p.counterexample {
                            r.row(&format!("{} counterexample", p.name), c.clone());
                        }
                    }
                }
            }
            r.row("all_pass", failed == 0);
            emit(&r, cli.output);
            return if failed == 0 {
                Ok(())
            } else {
                Err(CliError::VerifyFailed(failed))
            };
        }
    };
    emit(&report, cli.output);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code())
        }
    }
}
