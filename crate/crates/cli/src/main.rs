use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

mod commands;
mod parse;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "roofkit", version, about = "Cohomology, Ext checks and mutation certificates for homogeneous roofs")]
pub struct Cli {
    /// Emit a JSON envelope on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print the elapsed time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    /// Largest enumerated representation, in weights.
    #[arg(long, global = true, default_value_t = tensor::DEFAULT_ENUM_BOUND)]
    max_weights: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of an irreducible bundle on G/P by Borel–Weil–Bott.
    #[command(allow_negative_numbers = true)]
    Cohomology {
        /// Marked diagram, e.g. `A4:x2,x3`.
        space: String,
        /// Weight in fundamental-weight coordinates, degrees on the crossed
        /// nodes, or `O(a,b,...)`.
        #[arg(required = true, num_args = 1..)]
        weight: Vec<String>,
    },
    /// Ext groups between named bundles on a roof or on its hyperplane section.
    Ext {
        #[arg(long)]
        roof: String,
        /// Restrict both bundles to the hyperplane section M.
        #[arg(long = "on-M")]
        on_m: bool,
        e: String,
        f: String,
    },
    /// Condition (†) for a mutation pair `(E1, E2)`.
    Dagger {
        #[arg(long)]
        roof: String,
        e1: String,
        e2: String,
    },
    /// Whether `E` is L-semiorthogonal to `F`.
    Lso {
        #[arg(long)]
        roof: String,
        e: String,
        f: String,
    },
    /// Replay the mutation script of a roof (or `all`) and write certificates.
    Verify {
        /// Roof label or `all`.
        #[arg(required_unless_present = "script")]
        target: Option<String>,
        /// Replay a script file instead of a builtin script.
        #[arg(long, conflicts_with = "target")]
        script: Option<PathBuf>,
        /// Fail on any unresolved check (the default).
        #[arg(long, conflicts_with = "lenient")]
        strict: bool,
        /// Keep formal cones and ambiguous steps as flags.
        #[arg(long)]
        lenient: bool,
        /// Directory for certificate files.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Tangent cohomology of the Calabi–Yau eightfold in F(1,3,6).
    Eightfold,
    /// Feasibility of the one-parameter subgroup inequalities.
    #[command(allow_negative_numbers = true)]
    Chambers {
        /// Number of columns of B.
        #[arg(required_unless_present = "file")]
        k: Option<usize>,
        /// Sign of τ: `+` or `-`.
        #[arg(required_unless_present = "file")]
        tau: Option<String>,
        /// Number of vanishing leading columns of (v|B).
        #[arg(default_value_t = 0)]
        l: usize,
        /// Read a system in the text format instead.
        #[arg(long, conflicts_with_all = ["k", "tau"])]
        file: Option<PathBuf>,
    },
    /// Dump the roof catalog.
    Catalog {
        /// Include series members up to this parameter instead of the default set.
        #[arg(long)]
        max_param: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Cohomology { .. } => "cohomology",
            Command::Ext { .. } => "ext",
            Command::Dagger { .. } => "dagger",
            Command::Lso { .. } => "lso",
            Command::Verify { .. } => "verify",
            Command::Eightfold => "eightfold",
            Command::Chambers { .. } => "chambers",
            Command::Catalog { .. } => "catalog",
        }
    }
}

/// Exit status of a command.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    CheckFailed,
    InputError,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 2,
            Status::InputError => 3,
        }
    }
}

/// What a command produced: rendered text, a JSON payload and a status.
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub status: Status,
}

#[derive(Serialize)]
struct CommandEcho {
    name: &'static str,
    args: Vec<String>,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct Resources {
    max_weights: u64,
}

#[derive(Serialize)]
struct Envelope {
    schema_version: u32,
    command: CommandEcho,
    status: Status,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    timing: Timing,
    resources: Resources,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::InputError.code() } else { 0 });
        }
    };
    let started = Instant::now();
    let (status, result, text, error) = match commands::run(&cli) {
        Ok(o) => (o.status, o.result, o.text, None),
        Err(e) => (Status::InputError, Value::Null, String::new(), Some(e)),
    };
    let elapsed = started.elapsed();
    // A closed pipe downstream is not an error of the command.
    let mut stdout = std::io::stdout().lock();
    if cli.json {
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            command: CommandEcho { name: cli.command.name(), args },
            status,
            result,
            error: error.clone(),
            timing: Timing { elapsed_ms: elapsed.as_millis() as u64 },
            resources: Resources { max_weights: cli.max_weights },
        };
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
    } else {
        let _ = write!(stdout, "{text}");
    }
    if let Some(e) = &error {
        eprintln!("error: {e}");
    }
    if cli.timing {
        eprintln!("elapsed: {:.3} s", elapsed.as_secs_f64());
    }
    ExitCode::from(status.code())
}
