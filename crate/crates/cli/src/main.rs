use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use twovis::optimize::OptimizerConfig;
use twovis_cli::{
    cmd_sweep, render_report, run_verify, CliError, ReportMode, StateSpec, SweepMode,
};

/// One- and two-body visibility measures of two-qubit pure states.
#[derive(Parser)]
#[command(name = "twovis", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportModeArg {
    Closed,
    Numeric,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepModeArg {
    Closed,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyModeArg {
    Closed,
    Numeric,
}

#[derive(Subcommand)]
enum Command {
    /// Print the visibility report for one state.
    Report {
        /// Path to a JSON state document, or `-` for standard input.
        #[arg(long)]
        state: Option<String>,
        /// Larger Schmidt eigenvalue of the canonical state, in [0.5, 1].
        #[arg(long)]
        lambda0: Option<f64>,
        #[arg(long, value_enum, default_value_t = ReportModeArg::Closed)]
        mode: ReportModeArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Write the λ₀ sweep of all measures as CSV.
    Sweep {
        /// Number of grid points over [0.5, 1] (at least 2).
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = SweepModeArg::Closed)]
        mode: SweepModeArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Check the closed-form identities (and optionally the optimizer) on
    /// seeded Haar-random states; exits 0 only if every check passes.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, default_value_t = VerifyModeArg::Closed)]
        mode: VerifyModeArg,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
}

fn optimizer_config(seed: u64, restarts: usize) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed,
        ..OptimizerConfig::default()
    }
}

fn load_state(state: &Option<String>, lambda0: &Option<f64>) -> Result<StateSpec, CliError> {
    match (state, lambda0) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--state and --lambda0 are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Usage("provide --state <path|-> or --lambda0 <x>".into())),
        (None, Some(l0)) => Ok(StateSpec {
            amplitudes: None,
            schmidt_lambda0: Some(*l0),
        }),
        (Some(path), None) => {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::Io(format!("cannot read standard input: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?
            };
            StateSpec::parse(&text)
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Report {
            state,
            lambda0,
            mode,
            seed,
            restarts,
        } => {
            let resolved = load_state(&state, &lambda0)?.resolve()?;
            let mode = match mode {
                ReportModeArg::Closed => ReportMode::Closed,
                ReportModeArg::Numeric => ReportMode::Numeric,
                ReportModeArg::Both => ReportMode::Both,
            };
            let text = render_report(&resolved, mode, &optimizer_config(seed, restarts))?;
            print!("{text}");
            Ok(0)
        }
        Command::Sweep {
            points,
            out,
            mode,
            seed,
            restarts,
        } => {
            let mode = match mode {
                SweepModeArg::Closed => SweepMode::Closed,
                SweepModeArg::Numeric => SweepMode::Numeric,
            };
            cmd_sweep(points, &out, mode, &optimizer_config(seed, restarts))?;
            Ok(0)
        }
        Command::Verify {
            seed,
            count,
            mode,
            restarts,
        } => {
            let numeric = matches!(mode, VerifyModeArg::Numeric);
            let outcome = run_verify(seed, count, numeric, &optimizer_config(seed, restarts))?;
            print!("{}", outcome.text);
            Ok(if outcome.all_passed() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
