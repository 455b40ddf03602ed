//! qpract — compare classical chips against a fault-tolerant quantum
//! machine: operation throughput, I/O bandwidth, crossover sizes, oracle
//! budgets, and application triage.
//!
//! Exit codes: 0 success, 2 usage, 3 scenario parse, 4 validation or
//! domain error, 5 I/O.

mod commands;
mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{cmd_budget, cmd_classify, cmd_crossover, cmd_sweep, cmd_throughput};
use crate::scenario::{build_lab, load_scenario, CliError, CliResult, SweepDef};

#[derive(Debug, Parser)]
#[command(
    name = "qpract",
    version,
    about = "Throughput, crossover, and practicality estimates for quantum vs classical computing",
    propagate_version = true
)]
struct Cli {
    /// Scenario file (JSON); omit to run the built-in reference scenario
    #[arg(long, global = true, value_name = "FILE")]
    scenario: Option<PathBuf>,

    /// Accept an empty scenario file, filling everything from the
    /// built-in reference values
    #[arg(long, global = true)]
    defaults: bool,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Operation throughput and I/O bandwidth for every machine
    Throughput,
    /// Largest affordable oracle size for every kind and exponent
    Budget,
    /// Crossover size, runtime curves, and the advantage window for one
    /// kind and exponent
    Crossover {
        /// Operation kind to compare
        #[arg(long, default_value = "fp16")]
        kind: String,
        /// Polynomial speedup exponent (quantum does N ops where classical
        /// does N^k)
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        /// Oracle operations per call
        #[arg(long, default_value_t = 1.0)]
        oracle_ops: f64,
        /// First grid point for the runtime curve (defaults to four
        /// decades below the crossover)
        #[arg(long)]
        grid_from: Option<f64>,
        /// Last grid point (defaults to four decades above the crossover)
        #[arg(long)]
        grid_to: Option<f64>,
        /// Number of grid points (the curve also gets a crossover marker row)
        #[arg(long, default_value_t = 41)]
        grid_points: usize,
    },
    /// Triage application profiles into practicality categories
    Classify {
        /// Also classify the built-in application survey
        #[arg(long)]
        presets: bool,
    },
    /// Vary one scenario parameter and re-derive a quantity at each point
    Sweep {
        /// Run a sweep defined in the scenario file by name
        #[arg(long, conflicts_with_all = ["parameter", "from", "to", "points", "linear", "quantity"])]
        name: Option<String>,
        /// Dotted path to a numeric scenario field, e.g. quantum.cycle_time_s
        #[arg(long)]
        parameter: Option<String>,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        /// Number of samples
        #[arg(long, default_value_t = 9)]
        points: usize,
        /// Space samples linearly instead of logarithmically
        #[arg(long)]
        linear: bool,
        /// Quantity to derive, e.g. m_max:fp16:2, throughput:quantum:binary,
        /// units:binary, n_star:fp16:2, io:quantum
        #[arg(long)]
        quantity: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(u8::try_from(err.exit_code()).unwrap_or(1))
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let scenario = load_scenario(cli.scenario.as_deref(), cli.defaults)?;
    let (payload, notices) = match &cli.command {
        Command::Throughput => {
            let lab = build_lab(&scenario)?;
            let report = cmd_throughput(&lab)?;
            let payload = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            (payload, Vec::new())
        }
        Command::Budget => {
            let lab = build_lab(&scenario)?;
            let report = cmd_budget(&lab)?;
            let payload = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            (payload, Vec::new())
        }
        Command::Crossover {
            kind,
            k,
            oracle_ops,
            grid_from,
            grid_to,
            grid_points,
        } => {
            let lab = build_lab(&scenario)?;
            let report = cmd_crossover(
                &lab,
                kind,
                *k,
                *oracle_ops,
                *grid_from,
                *grid_to,
                *grid_points,
            )?;
            match cli.format {
                Format::Text => (report.to_text(), Vec::new()),
                Format::Json => (report.to_json(), Vec::new()),
                // CSV keeps stdout plot-ready; the summary goes to stderr.
                Format::Csv => (report.to_csv(), report.summary_lines()),
            }
        }
        Command::Classify { presets } => {
            let lab = build_lab(&scenario)?;
            let report = cmd_classify(&lab, *presets)?;
            let payload = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            (payload, Vec::new())
        }
        Command::Sweep {
            name,
            parameter,
            from,
            to,
            points,
            linear,
            quantity,
        } => {
            let def = resolve_sweep(
                &scenario,
                name.as_deref(),
                parameter.as_deref(),
                *from,
                *to,
                *points,
                *linear,
                quantity.as_deref(),
            )?;
            let report = cmd_sweep(&scenario, &def)?;
            let payload = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            (payload, Vec::new())
        }
    };
    emit(cli.out.as_deref(), &payload)?;
    for line in notices {
        eprintln!("{line}");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn resolve_sweep(
    scenario: &scenario::Scenario,
    name: Option<&str>,
    parameter: Option<&str>,
    from: Option<f64>,
    to: Option<f64>,
    points: usize,
    linear: bool,
    quantity: Option<&str>,
) -> CliResult<SweepDef> {
    if let Some(name) = name {
        return scenario
            .sweeps
            .iter()
            .find(|s| s.name == name)
            .cloned()
            .ok_or_else(|| {
                CliError::Usage(format!("the scenario defines no sweep named `{name}`"))
            });
    }
    match (parameter, from, to, quantity) {
        (Some(parameter), Some(from), Some(to), Some(quantity)) => Ok(SweepDef {
            name: "cli".to_string(),
            parameter: parameter.to_string(),
            from,
            to,
            points,
            log_spacing: !linear,
            quantity: quantity.to_string(),
        }),
        _ => Err(CliError::Usage(
            "sweep needs either --name or all of --parameter, --from, --to, and --quantity"
                .to_string(),
        )),
    }
}

fn emit(out: Option<&std::path::Path>, payload: &str) -> CliResult<()> {
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
    }
}
