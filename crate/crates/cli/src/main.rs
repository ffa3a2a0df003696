//! `codebounds`: cardinality and energy bounds for codes in Hamming spaces.
//!
//! Exit codes: 0 success, 2 invalid parameters or unmet conditions, 3 no
//! valid `k`, 4 internal inconsistency (including failed regressions).

mod args;
mod commands;
mod output;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{Format, ParamArgs};
use codebounds::algebra::scalar::{default_precision, PRECISION_ENV};
use codebounds::BoundError;
use commands::{DistArgs, EnergyArgs, OracleCommand, RefineArgs, TestfnArgs};
use output::emit;
use table::{TableArgs, BUILTIN_CORPUS};

#[derive(Parser, Debug)]
#[command(name = "codebounds", version, about = "Levenshtein-type and universal energy bounds for codes in Hamming spaces")]
struct Cli {
    /// Working precision in bits (default: $CODEBOUNDS_PREC or 128).
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Output format (default: csv for `table`, text otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Upper bound on the size of a code with distances in [d, D].
    Bound(ParamArgs),
    /// Lower and upper bounds on the energy of M-point codes.
    Energy(EnergyArgs),
    /// Distance distribution of a code attaining the bound.
    Distdist(DistArgs),
    /// Test functions deciding whether the bound can be improved.
    Testfn(TestfnArgs),
    /// Refined bound from grid-adapted polynomials.
    Refine(RefineArgs),
    /// Exhaustive computations on small spaces.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// The binary ℓ = (2-n)/n table, or the regression corpus.
    Table(TableArgs),
}

fn run(cli: &Cli) -> Result<ExitCode, BoundError> {
    let prec = match cli.prec {
        Some(0) => return Err(BoundError::InvalidParams("--prec must be positive".into())),
        Some(p) => {
            // Library routines without an explicit precision read the default.
            std::env::set_var(PRECISION_ENV, p.to_string());
            p
        }
        None => default_precision(),
    };
    let format = cli.format.unwrap_or(match cli.command {
        Command::Table(_) => Format::Csv,
        _ => Format::Text,
    });
    match &cli.command {
        Command::Bound(a) => emit("bound", &commands::bound(a, prec)?, format)?,
        Command::Energy(a) => emit("energy", &commands::energy(a, prec)?, format)?,
        Command::Distdist(a) => emit("distdist", &commands::distdist(a, prec)?, format)?,
        Command::Testfn(a) => emit("testfn", &commands::testfn(a, prec)?, format)?,
        Command::Refine(a) => emit("refine", &commands::refine(a, prec)?, format)?,
        Command::Oracle(c) => emit("oracle", &commands::oracle(c, prec)?, format)?,
        Command::Table(a) if a.verify => {
            let text = match &a.corpus {
                Some(path) => std::fs::read_to_string(path).map_err(|e| BoundError::InvalidParams(format!("cannot read {path}: {e}")))?,
                None => BUILTIN_CORPUS.to_string(),
            };
            let report = table::verify(&table::parse_corpus(&text)?, prec);
            let format = cli.format.unwrap_or(Format::Text);
            emit("table-verify", &report, format)?;
            if report.failed > 0 {
                return Ok(ExitCode::from(4));
            }
        }
        Command::Table(a) => emit("table", &table::table(a.n.expect("required unless --verify"), prec)?, format)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
