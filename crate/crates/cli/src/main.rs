mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypersurf_core::hopfcatalog::{
    Catalog, ModelSpace, Tolerances, DEFAULT_ORACLE_TOL, DEFAULT_WITNESS_TOL, ORACLE_SAMPLES,
};

use commands::{CliError, ContextArg, ProveTarget, TensorArg};
use report::{Payload, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "hypersurf",
    version,
    about = "Exact checks of *-Ricci conditions on real hypersurfaces in CP² and CH²"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ORACLE_TOL, global = true)]
    tol_oracle: f64,
    #[arg(long, default_value_t = DEFAULT_WITNESS_TOL, global = true)]
    tol_witness: f64,
    /// Radii per family for type-B checks and default sweeps.
    #[arg(long, default_value_t = ORACLE_SAMPLES, global = true)]
    samples: usize,
    /// Catalog file to use instead of the builtin one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay the non-existence argument.
    Prove {
        #[arg(value_enum)]
        target: ProveTarget,
        /// Restrict to one ambient space (`cp2` or `ch2`).
        #[arg(long, value_parser = parse_space)]
        space: Option<ModelSpace>,
    },
    /// Print the symbolic equations of a condition.
    Check {
        #[arg(value_enum)]
        tensor: TensorArg,
        condition: String,
        #[arg(value_enum)]
        context: ContextArg,
        /// Assumptions `name=value`.
        assumptions: Vec<String>,
        /// The function `L` of pseudo-parallelism.
        #[arg(long)]
        l: Option<String>,
    },
    /// Evaluate a condition across radii of a catalog family:
    /// `sweep FAMILY RMIN RMAX [SAMPLES] CONDITION`.
    Sweep {
        #[arg(num_args = 4..=5, allow_negative_numbers = true, value_names = ["FAMILY", "RMIN", "RMAX", "SAMPLES", "CONDITION"])]
        args: Vec<String>,
        /// Rational constant `L` for pseudo-parallelism.
        #[arg(long)]
        l: Option<String>,
    },
    /// Evaluate or solve an expression.
    Expr {
        #[command(subcommand)]
        action: ExprAction,
    },
}

#[derive(Debug, Subcommand)]
enum ExprAction {
    Eval {
        text: String,
        #[arg(allow_negative_numbers = true)]
        bindings: Vec<String>,
    },
    Solve {
        text: String,
        unknown: String,
    },
}

fn parse_space(s: &str) -> Result<ModelSpace, String> {
    ModelSpace::parse(s).ok_or_else(|| format!("unknown space `{s}`; expected cp2 or ch2"))
}

fn parse_f64(name: &str, s: &str) -> Result<f64, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("{name} must be a number, got `{s}`")))
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<Report, Box<dyn std::error::Error>> {
    if !(cli.tol_oracle > 0.0 && cli.tol_witness > 0.0) {
        return Err(CliError::Usage("tolerances must be positive".into()).into());
    }
    if cli.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()).into());
    }
    let tol = Tolerances {
        oracle: cli.tol_oracle,
        witness: cli.tol_witness,
    };
    let catalog = match &cli.catalog {
        Some(path) => Catalog::load(path, tol.oracle)?,
        None => Catalog::builtin(),
    };
    let (status, payload) = match &cli.command {
        Command::Prove { target, space } => {
            let (status, p) = commands::prove(*target, *space, &catalog, cli.samples)?;
            (status, Payload::Proof(p))
        }
        Command::Check {
            tensor,
            condition,
            context,
            assumptions,
            l,
        } => {
            let p = commands::check(*tensor, condition, *context, l.as_deref(), assumptions)?;
            (Status::Pass, Payload::Check(p))
        }
        Command::Sweep { args, l } => {
            let (samples, condition) = match args.len() {
                5 => (
                    args[3]
                        .parse()
                        .map_err(|_| CliError::Usage(format!("SAMPLES must be an integer, got `{}`", args[3])))?,
                    &args[4],
                ),
                _ => (cli.samples, &args[3]),
            };
            let r_min = parse_f64("RMIN", &args[1])?;
            let r_max = parse_f64("RMAX", &args[2])?;
            let p = commands::run_sweep(
                &catalog,
                &args[0],
                commands::RadiusRange { r_min, r_max, samples },
                condition,
                l.as_deref(),
                tol,
            )?;
            (Status::Pass, Payload::Sweep(p))
        }
        Command::Expr { action } => {
            let p = match action {
                ExprAction::Eval { text, bindings } => commands::expr_eval(text, bindings)?,
                ExprAction::Solve { text, unknown } => commands::expr_solve(text, unknown)?,
            };
            (Status::Pass, Payload::Expr(p))
        }
    };
    Ok(Report::new(argv, catalog.version, status, payload))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, argv) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::FAILURE;
                }
            }
            match report.status {
                Status::Pass => ExitCode::SUCCESS,
                Status::Fail => ExitCode::FAILURE,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
