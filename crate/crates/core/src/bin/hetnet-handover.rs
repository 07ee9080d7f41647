use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hetnet_handover::commands::{cmd_analyze, cmd_fixtures, cmd_simulate, cmd_validate, Report};
use hetnet_handover::config::{load_config, ExperimentSpec};
use hetnet_handover::Result;

#[derive(Parser)]
#[command(name = "hetnet-handover", version, about = "Handover rates in clustered HetNets: closed forms and simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form metrics at every sweep point.
    Analyze(Common),
    /// Run Monte Carlo campaigns and write per-trial counts.
    Simulate(Common),
    /// Run campaigns and compare them with the closed forms.
    Validate(Common),
    /// Recompute the regression constants from their reference routes.
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// TOML experiment file; built-in defaults when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed; overrides `[simulation] seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per sweep point; overrides `[simulation] n_trials`.
    #[arg(long)]
    trials: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

impl Common {
    fn spec(&self) -> Result<ExperimentSpec> {
        let base = match &self.config {
            Some(p) => load_config(p)?,
            None => ExperimentSpec::from_file(Default::default())?,
        };
        base.with_overrides(self.seed, self.trials, self.workers)
    }

    fn out_path(&self, spec: &ExperimentSpec) -> Option<PathBuf> {
        self.out.clone().or_else(|| spec.file.output.clone())
    }
}

fn emit(body: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn run_report(c: &Common, f: fn(&ExperimentSpec) -> Result<Report>) -> Result<()> {
    let spec = c.spec()?;
    let report = f(&spec)?;
    emit(&report.csv, c.out_path(&spec).as_deref())?;
    eprint!("{}", report.summary);
    if !report.summary.ends_with('\n') {
        eprintln!();
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(c) => run_report(c, cmd_analyze),
        Command::Simulate(c) => run_report(c, cmd_simulate),
        Command::Validate(c) => run_report(c, cmd_validate),
        Command::Fixtures { out } => emit(&cmd_fixtures(), out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
