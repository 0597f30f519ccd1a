use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use umbral_cli::grid::{GridConfig, GridOverrides};
use umbral_cli::table::{build_table, FamilyName, Format, TableParams};
use umbral_cli::{export, order_floor_from_env, verify, UsageError};
use umbral_core::Rational;

#[derive(Parser)]
#[command(name = "umbral", version, about = "Exact tables and identity checks for mixed-type poly-Cauchy/Peters polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print coefficient rows (constant term first) for one family.
    Table(TableArgs),
    /// Check identities over a parameter grid; exit 1 if any stays unresolved.
    Verify(VerifyArgs),
    /// Evaluate printed forms and proposed corrections, as a readable document.
    Errata(ErrataArgs),
    /// Write tables for every family over the grid into a directory.
    Export(ExportArgs),
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<i64>,
    #[arg(long)]
    s: Option<u32>,
    /// Largest index n.
    #[arg(long = "n", visible_alias = "n-max", default_value_t = 8)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// JSON grid file, or `default`.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<Rational>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mu: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    y: Option<Vec<Rational>>,
    #[arg(long = "n-max", visible_alias = "n")]
    n_max: Option<usize>,
}

impl GridArgs {
    fn load(&self) -> anyhow::Result<GridConfig> {
        let overrides = GridOverrides {
            k: self.k.clone(),
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            s: self.s.clone(),
            y: self.y.clone(),
            n_max: self.n_max,
        };
        GridConfig::load(self.grid.as_deref(), &overrides).map_err(|e| UsageError(format!("{e:#}")).into())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated identity ids.
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    identities: Vec<String>,
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ErrataArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Target directory.
    #[arg(long)]
    output: PathBuf,
}

fn emit(text: &str, output: Option<&PathBuf>) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Table(a) => {
            let params = TableParams { k: a.k, lambda: a.lambda, mu: a.mu, s: a.s };
            let table = build_table(a.family, &params, a.n).map_err(|e| UsageError(format!("{e:#}")))?;
            emit(&table.render(a.format)?, a.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(a) => {
            let descs = verify::select(&a.identities, a.all)?;
            let grid = a.grid.load()?;
            let report = verify::run(&descs, &grid, order_floor_from_env()?)?;
            let summary = verify::render_summary(&report);
            match a.format {
                ReportFormat::Json => {
                    emit(&(serde_json::to_string_pretty(&report)? + "\n"), a.output.as_ref())?;
                    eprint!("{summary}");
                }
                ReportFormat::Text => emit(&summary, a.output.as_ref())?,
            }
            Ok(if report.success { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Errata(a) => {
            let descs = verify::select(&[], true)?;
            let grid = a.grid.load()?;
            let report = verify::run(&descs, &grid, order_floor_from_env()?)?;
            let text = match a.format {
                ReportFormat::Text => verify::render_errata(&report),
                ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            emit(&text, a.output.as_ref())?;
            Ok(if report.success { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Export(a) => {
            let grid = a.grid.load()?;
            let count = export::export(&grid, &a.output, a.format)?;
            eprintln!("wrote {count} tables to {}", a.output.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
