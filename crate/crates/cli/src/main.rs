use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use alexmod::{Error, Result};

mod commands;

const SCHEMA: &str = "alexmod/1";

#[derive(Parser)]
#[command(name = "alexmod", version, about = "Exact Alexander modules, thickenings and arrangement invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Snf,
    Psi,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeltaSource {
    ClosedForm,
    Pipeline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Hodge,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander module of a presentation and the torsion of its cohomology.
    Alexander {
        presentation: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = Via::Both)]
        via: Via,
    },
    /// Thicken a bifiltered CDGA along a direction.
    Thicken {
        cdga: PathBuf,
        /// Comma-separated degree-1 coefficients, e.g. `1,0,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(short = 'm', default_value_t = 2)]
        m: usize,
        /// Run the structural suite on `A(η, m)`.
        #[arg(long)]
        checks: bool,
    },
    /// Intersection data, Orlik–Solomon algebra and Δ₁ of a line arrangement.
    Arrangement {
        arrangement: PathBuf,
        #[arg(long, value_enum)]
        report: Option<Report>,
        #[arg(long, value_enum)]
        delta: Option<DeltaSource>,
        /// Use this Δ₁ instead of computing one.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "delta")]
        delta_value: Option<String>,
    },
    /// Checks on a torsion module.
    Check {
        module: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "jordan,roots,semisimple")]
        suite: Vec<Suite>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Built-in fixtures and the acceptance suite.
    Fixtures {
        #[arg(long)]
        run_all: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Jordan,
    Roots,
    Semisimple,
}

/// A report plus whether the command succeeded.
pub struct Outcome {
    pub body: Value,
    pub ok: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Alexander { presentation, degree, via } => commands::alexander(&read(&presentation)?, degree, via),
        Command::Thicken { cdga, eta, m, checks } => commands::thicken(&read(&cdga)?, &eta, m, checks),
        Command::Arrangement { arrangement, report, delta, delta_value } => {
            commands::arrangement(&read(&arrangement)?, report, delta, delta_value.as_deref())
        }
        Command::Check { module, suite, degree, dim } => commands::check(&read(&module)?, &suite, degree, dim),
        Command::Fixtures { run_all } => Ok(commands::fixtures(run_all)),
    }
}

fn emit(mut body: Value) {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&body).expect("reports serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            emit(out.body);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            emit(json!({ "error": e.name(), "message": e.to_string() }));
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
