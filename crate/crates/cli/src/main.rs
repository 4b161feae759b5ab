use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tricycle_cli::commands::{self, BacklundArgs, BacklundInput};
use tricycle_cli::config::{parse_length, Overrides, RunConfig, DEFAULT_K};
use tricycle_cli::{CliError, Report};

/// Geodesics of the planar two-link tricycle.
#[derive(Parser)]
#[command(name = "tricycle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a geodesic; writes <out>.csv and <out>.svg.
    Simulate(RunArgs),
    /// Integrate a singular curve; writes <out>.csv and <out>.svg.
    Singular(RunArgs),
    /// Run the invariant suite on the configured geodesic and print a JSON report.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Also run every acceptance criterion.
        #[arg(long)]
        acceptance: bool,
    },
    /// Apply the bicycle transformation to a curve.
    Backlund(BacklundCli),
    /// Exact Groebner-basis proofs of the conservation laws.
    Prove {
        /// Comma-separated pairs: `a/b` for integer lengths (a, b), `x:y` for rationals.
        #[arg(long)]
        lengths: Option<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in initial state: circle or inflectional.
    #[arg(long)]
    example: Option<String>,
    /// Elliptic modulus of the inflectional example.
    #[arg(long)]
    k: Option<f64>,
    /// Length of the first segment, rational or decimal.
    #[arg(long, value_parser = length)]
    l1: Option<f64>,
    /// Length of the second segment, rational or decimal.
    #[arg(long, value_parser = length)]
    l2: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    /// Output sample spacing.
    #[arg(long)]
    dt: Option<f64>,
    /// Integrator tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Output path prefix.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct BacklundCli {
    /// Unit-speed input curve as CSV with columns t, x, y.
    #[arg(long, conflicts_with = "example")]
    input: Option<PathBuf>,
    /// Generated input: elastica, line or circle.
    #[arg(long)]
    example: Option<String>,
    /// Modulus of the generated elastica.
    #[arg(long, default_value_t = DEFAULT_K)]
    k: f64,
    /// Segment length of the bicycle.
    #[arg(long = "L", default_value_t = 2.0, value_parser = length)]
    l: f64,
    /// Initial steering angle.
    #[arg(long, allow_hyphen_values = true)]
    beta0: Option<f64>,
    #[arg(long, default_value_t = 20.0)]
    tmax: f64,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value = "backlund")]
    out: String,
}

fn length(s: &str) -> Result<f64, String> {
    parse_length(s).map_err(|e| e.to_string())
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, CliError> {
        let o = Overrides {
            example: self.example.clone(),
            k: self.k,
            l1: self.l1,
            l2: self.l2,
            t_max: self.tmax,
            dt: self.dt,
            tol: self.tol,
            out: self.out.clone(),
        };
        RunConfig::resolve(self.config.as_ref(), &o)
    }
}

impl BacklundCli {
    fn args(&self) -> Result<BacklundArgs, CliError> {
        let input = match (&self.input, self.example.as_deref()) {
            (Some(p), _) => BacklundInput::Csv(p.clone()),
            (None, None | Some("elastica")) => BacklundInput::Elastica { k: self.k },
            (None, Some("line")) => BacklundInput::Line,
            (None, Some("circle")) => BacklundInput::Circle,
            (None, Some(other)) => {
                return Err(CliError::Config(format!("unknown example {other:?}; expected elastica, line or circle")))
            }
        };
        Ok(BacklundArgs {
            input,
            l: self.l,
            beta0: self.beta0,
            t_max: self.tmax,
            dt: self.dt,
            tol: self.tol,
            prefix: self.out.clone(),
        })
    }
}

fn execute(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Simulate(a) => commands::simulate(&a.config()?),
        Command::Singular(a) => commands::singular(&a.config()?),
        Command::Verify { run, acceptance } => commands::verify(&run.config()?, acceptance),
        Command::Backlund(b) => commands::backlund(&b.args()?),
        Command::Prove { lengths } => commands::prove(lengths.as_deref()),
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(report) => {
            // a closed pipe downstream is not an error of the command
            let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("tricycle: one or more checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("tricycle: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
