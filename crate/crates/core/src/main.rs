//! Command-line front end for the radial vacuum-Euler blow-up laboratory.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vacuum_euler::config::RunConfig;
use vacuum_euler::driver;

#[derive(Parser)]
#[command(
    name = "vacuum-euler",
    about = "Finite-time blow-up laboratory for radially symmetric isentropic \
             compressible Euler flow with vacuum at the origin",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the 2D weight K0, its derivative, and the small-r bounds
    BesselTable {
        r_min: f64,
        r_max: f64,
        /// number of linearly spaced rows
        n: usize,
        /// output CSV path (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build initial data and report the admissibility margins as JSON
    Check { config: PathBuf },
    /// Print only the predicted blow-up-time bound (null if inadmissible)
    Predict { config: PathBuf },
    /// Run the solver and write series + snapshot CSVs
    Simulate {
        config: PathBuf,
        /// also emit a generic plotting script next to the CSVs
        #[arg(long)]
        plot_script: bool,
    },
    /// Simulate and check the proof-chain inequalities along the trajectory
    Verify {
        config: PathBuf,
        /// negative control: flip the velocity sign in the computed
        /// trajectory before checking (the rate-monotone check must fail)
        #[arg(long)]
        negate_velocity: bool,
    },
    /// Run the configured (gamma, m/m_min) grid and aggregate one CSV row per pair
    Sweep { config: PathBuf },
}

fn load(path: &std::path::Path) -> vacuum_euler::Result<RunConfig> {
    RunConfig::from_path(path)
}

fn dispatch(cli: Cli) -> vacuum_euler::Result<i32> {
    match cli.command {
        Command::BesselTable {
            r_min,
            r_max,
            n,
            output,
        } => {
            match output {
                Some(path) => {
                    let mut file = std::fs::File::create(path)?;
                    driver::bessel_table(r_min, r_max, n, &mut file)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    driver::bessel_table(r_min, r_max, n, &mut stdout.lock())?;
                }
            }
            Ok(driver::EXIT_OK)
        }
        Command::Check { config } => driver::run_check(&load(&config)?),
        Command::Predict { config } => driver::run_predict(&load(&config)?),
        Command::Simulate {
            config,
            plot_script,
        } => driver::run_simulate(&load(&config)?, plot_script),
        Command::Verify {
            config,
            negate_velocity,
        } => driver::run_verify(&load(&config)?, negate_velocity),
        Command::Sweep { config } => driver::run_sweep(&load(&config)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(driver::exit_code_for(&err) as u8)
        }
    }
}
