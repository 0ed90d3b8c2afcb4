use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use foamhw::synth::SynthParams;
use foamhw_cli::commands::{cmd_forecast, cmd_sweep, cmd_synth};
use foamhw_cli::config::{Overrides, RunConfig};
use foamhw_cli::error::CliError;

#[derive(Parser)]
#[command(name = "foamhw", version, about = "Seasonal forecasting with FOA-tuned Holt-Winters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hold out the last `horizon` points and forecast them with each model.
    Forecast {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Repeat the forecast for training windows of several cycle counts.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 3)]
        min_cycles: usize,
        #[arg(long, default_value_t = 8)]
        max_cycles: usize,
    },
    /// Write a synthetic seasonal series as `label,value` CSV.
    Synth {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        cycles: usize,
        #[arg(long, default_value_t = 6)]
        period: usize,
        #[arg(long, default_value_t = 1000.0)]
        base: f64,
        #[arg(long, default_value_t = 40.0)]
        growth: f64,
        #[arg(long, default_value_t = 0.25)]
        spread: f64,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Input CSV with a `label,value` header.
    #[arg(long)]
    data: PathBuf,
    /// `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    period: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    sizepop: Option<usize>,
    #[arg(long)]
    maxgen: Option<usize>,
    #[arg(long)]
    flight_range: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated subset of foa-mhw, mhw-default, si.
    #[arg(long)]
    models: Option<String>,
    /// alpha,beta,gamma for the untuned Holt-Winters baseline.
    #[arg(long)]
    default_params: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        base.apply(&Overrides {
            period: self.period,
            horizon: self.horizon,
            sizepop: self.sizepop,
            maxgen: self.maxgen,
            flight_range: self.flight_range,
            seed: self.seed,
            default_params: self.default_params.clone(),
            models: self.models.clone(),
            output_path: self.out.clone(),
        })
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Forecast { run } => cmd_forecast(&run.resolve()?, &run.data),
        Command::Sweep {
            run,
            min_cycles,
            max_cycles,
        } => cmd_sweep(&run.resolve()?, &run.data, min_cycles, max_cycles),
        Command::Synth {
            seed,
            cycles,
            period,
            base,
            growth,
            spread,
            noise,
            out,
        } => {
            let params = SynthParams {
                seed,
                cycles,
                period,
                base,
                growth,
                pattern_spread: spread,
                noise,
            };
            cmd_synth(&params, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("foamhw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
