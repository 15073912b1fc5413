//! `orchard`: command-line front end for orchard-core.
//!
//! Exit codes: 0 all checks pass, 1 a verification mismatch, 2 a usage or
//! parse error, 3 a resource cap was hit.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "orchard", version, about = "Orchard arrangements from elliptic curves over finite fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Suppress informational notes.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Point count, group, 3-rich lines and bound for one curve.
    Curve {
        /// `FIELD;a1,a2,a3,a4,a6` or `FIELD;y2+...=x3+...`, e.g. `5^1;0,0,0,0,3`.
        curve: String,
        /// List the points and the 3-rich line triples.
        #[arg(long)]
        lines: bool,
        /// Also print trace, j-invariant and discriminant.
        #[arg(long)]
        structure: bool,
        /// Decide supersingularity (trace test, and Deuring's test when defined).
        #[arg(long)]
        supersingular: bool,
    },
    /// 3-rich line count of a group model `Z_n1 + ... + Z_nk`, given as `n1,...,nk`.
    Formula { group: String },
    /// Whether an order `q + 1 - t` (and optionally a structure) is realizable over `F_{p^n}`.
    #[command(allow_negative_numbers = true)]
    Admissible {
        p: u64,
        n: u32,
        t: i64,
        n1: Option<u64>,
        n2: Option<u64>,
    },
    /// Recompute the table of worked examples.
    Table3,
    /// Check a theorem constructively: t35, t36, t37 take `--q`; t38 takes `--p --order --group`.
    Verify {
        theorem: String,
        /// Field size (a prime power) or a field spec such as `2^3:1,1,0,1`.
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Check a rational point configuration file over Q and its reduction.
    Real {
        file: std::path::PathBuf,
        /// Curve over F_q to compare the reduced points with.
        #[arg(long)]
        curve: Option<String>,
    },
    /// Exhaustive sweep of all curves over a small field, with per-order statistics.
    Sweep {
        /// Field size (a prime power) or field spec.
        q: String,
    },
    /// Build a named curve family over a field.
    Family {
        /// One of the family names, e.g. `minus_x`, `char2_xa`, `mordell_b:3`.
        name: String,
        /// Field size (a prime power) or field spec.
        q: String,
    },
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Curve {
            curve,
            lines,
            structure,
            supersingular,
        } => commands::curve(curve, *lines, *structure, *supersingular),
        Command::Formula { group } => commands::formula(group),
        Command::Admissible { p, n, t, n1, n2 } => commands::admissible(*p, *n, *t, *n1, *n2),
        Command::Table3 => commands::table3(),
        Command::Verify {
            theorem,
            q,
            p,
            order,
            group,
        } => commands::verify(theorem, q.as_deref(), *p, *order, group.as_deref()),
        Command::Real { file, curve } => commands::real(file, curve.as_deref()),
        Command::Sweep { q } => commands::sweep(q),
        Command::Family { name, q } => commands::family(name, q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = report.render(cli.format, cli.quiet);
            print!("{text}");
            ExitCode::from(report.exit_code())
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
