use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tribody_cli::commands::{
    self, CentralConfigArgs, CliError, CriticalPathArgs, Options, PhiProfileArgs,
    SeriesCheckArgs, TolOverrides,
};
use tribody_core::contour::Window;

#[derive(Parser)]
#[command(
    name = "tribody",
    about = "Planar three-body simulations, shape-space audits, and measure level sets",
    version
)]
struct Cli {
    /// Output directory for generated files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Seed recorded into output metadata for sweep reproducibility.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance overrides as KEY=VALUE (rel, abs, quad, quartic, limit).
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE")]
    tol: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario and write the trajectory CSV.
    Simulate { scenario: PathBuf },
    /// Integrate a scenario and write the orbit-audit JSON.
    Audit { scenario: PathBuf },
    /// Extract measure level sets over the pinned shape chart.
    CriticalPath {
        /// Three masses, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        masses: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        exponent: f64,
        /// Explicit level, or `auto` for every critical value.
        #[arg(long, default_value = "auto")]
        level: String,
        /// Window as x0,x1,y0,y1.
        #[arg(long, value_delimiter = ',', num_args = 4, allow_negative_numbers = true, default_values_t = [-4.0, 4.0, -4.0, 4.0])]
        window: Vec<f64>,
        #[arg(long = "grid-n", default_value_t = 512)]
        grid_n: usize,
    },
    /// Sample the inertia potential and mark its turning points.
    PhiProfile {
        #[arg(long, allow_negative_numbers = true)]
        energy: f64,
        #[arg(long, allow_negative_numbers = true)]
        measure: f64,
        #[arg(long, default_value_t = 1.0)]
        exponent: f64,
        #[arg(long = "b-constant", default_value_t = 0.0, allow_negative_numbers = true)]
        b_constant: f64,
        #[arg(long = "i-min", default_value_t = 1e-3)]
        i_min: f64,
        #[arg(long = "i-max", default_value_t = 4.0)]
        i_max: f64,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
    /// Verify the critical-path series and limits; exit 5 on breach.
    SeriesCheck {
        #[arg(long = "max-x", default_value_t = 0.05)]
        max_x: f64,
        #[arg(long = "grid-n", default_value_t = 4096)]
        grid_n: usize,
    },
    /// Solve and emit all five central configurations.
    CentralConfigs {
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        masses: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        exponent: f64,
    },
}

fn run(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    let opts = Options {
        out_dir: cli.out,
        seed: cli.seed,
        tol: TolOverrides::parse(&cli.tol)?,
    };
    match cli.command {
        Command::Simulate { scenario } => commands::cmd_simulate(&scenario, &opts),
        Command::Audit { scenario } => commands::cmd_audit(&scenario, &opts),
        Command::CriticalPath {
            masses,
            exponent,
            level,
            window,
            grid_n,
        } => {
            let level = match level.as_str() {
                "auto" => None,
                other => Some(other.parse::<f64>().map_err(|e| {
                    CliError::parse(format!("--level {other}: {e} (number or `auto`)"))
                })?),
            };
            commands::cmd_critical_path(
                &CriticalPathArgs {
                    masses,
                    exponent,
                    level,
                    window: Window::new(window[0], window[1], window[2], window[3]),
                    grid_n,
                },
                &opts,
            )
        }
        Command::PhiProfile {
            energy,
            measure,
            exponent,
            b_constant,
            i_min,
            i_max,
            samples,
        } => commands::cmd_phi_profile(
            &PhiProfileArgs {
                energy,
                measure,
                exponent,
                b_constant,
                i_range: (i_min, i_max),
                samples,
            },
            &opts,
        ),
        Command::SeriesCheck { max_x, grid_n } => {
            commands::cmd_series_check(&SeriesCheckArgs { max_x, grid_n }, &opts)
        }
        Command::CentralConfigs { masses, exponent } => {
            commands::cmd_central_configs(&CentralConfigArgs { masses, exponent }, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
