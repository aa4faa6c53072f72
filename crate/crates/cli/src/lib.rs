//! Scriptable front end: every computation and check of the engine as a
//! subcommand with text or JSON output.
//!
//! Exit codes are `0` for a passing check or a computed value, `1` for a
//! failing check and `2` for usage or input errors.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qext_core::text::Style;
use qext_core::CalculusType;

mod commands;
pub mod random;

pub use commands::{verify_all, FamilyVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Value,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Value => "value",
        }
    }

    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    /// Rendered in the requested output mode.
    pub output: String,
    pub mode: OutputMode,
    pub exit_code: i32,
}

/// Result of one subcommand before rendering.
pub(crate) struct Outcome {
    pub status: Status,
    pub payload: Value,
    pub text: String,
}

/// Malformed input: bad syntax, an expression outside an operation's domain.
pub(crate) struct InputError(pub String);

impl From<qext_core::Error> for InputError {
    fn from(e: qext_core::Error) -> Self {
        match &e {
            qext_core::Error::Syntax { expected, .. } if !expected.is_empty() => {
                InputError(format!("{e} (expected one of: {})", expected.join(", ")))
            }
            qext_core::Error::NegativeExponent { line, column } => {
                InputError(format!("{e} (line {line}, column {column})"))
            }
            _ => InputError(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qext",
    version,
    about = "Two-parameter differential calculus on the quantum exterior plane"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputMode::Text)]
    output: OutputMode,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print generators as Θ Φ θ φ ∂θ ∂φ.
    #[arg(long, global = true)]
    unicode: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Wrt {
    Theta,
    Phi,
}

#[derive(clap::Args, Debug)]
struct TypeArg {
    /// Calculus type.
    #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=2))]
    ty: u8,
}

impl TypeArg {
    fn get(&self) -> CalculusType {
        CalculusType::from_number(self.ty).expect("range checked")
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an expression (`-` reads stdin).
    Normalize {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Exterior derivative, normalized.
    D {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Action of a partial derivative on a function of the coordinates.
    Derive {
        #[arg(long, value_enum)]
        wrt: Wrt,
        #[command(flatten)]
        ty: TypeArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Re-derive both calculi from the ansatz constraints.
    SolveAnsatz,
    /// Consistency identities of a calculus.
    Consistency {
        #[command(flatten)]
        ty: TypeArg,
        /// Use the Type II rule set with the negated coefficient of Theta*phi.
        #[arg(long)]
        printed_sign: bool,
    },
    /// Critical-pair confluence check.
    Confluence {
        #[command(flatten)]
        ty: TypeArg,
        /// Use the Type II rule set with the negated coefficient of Theta*phi.
        #[arg(long)]
        printed_sign: bool,
    },
    /// Yang-Baxter equation in plain and braid form.
    Ybe {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Relations of the calculus rebuilt from the R-matrix.
    Rcheck {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Quantum-group relations from the RTT equation.
    Rtt {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Covariance of the plane and calculus relations under the coaction.
    Covariance {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Fock representation of the oscillator algebra at a numeric q.
    Fock {
        #[command(flatten)]
        ty: TypeArg,
        /// Deformation parameter as `re,im` (or `re`).
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Run every check.
    VerifyAll,
}

fn read_expr(arg: &str, stdin: &mut dyn Read) -> Result<String, InputError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| InputError(format!("failed to read stdin: {e}")))?;
    Ok(s.trim_end().to_string())
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, InputError> {
    let style = Style { unicode: cli.unicode };
    match &cli.command {
        Command::Normalize { ty, expr } => commands::normalize(ty.get(), &read_expr(expr, stdin)?, style),
        Command::D { ty, expr } => commands::exterior(ty.get(), &read_expr(expr, stdin)?, style),
        Command::Derive { wrt, ty, expr } => {
            let i = match wrt {
                Wrt::Theta => 1,
                Wrt::Phi => 2,
            };
            commands::derive(ty.get(), i, &read_expr(expr, stdin)?, style)
        }
        Command::SolveAnsatz => commands::solve_ansatz(),
        Command::Consistency { ty, printed_sign } => {
            commands::consistency(commands::rule_set(ty.get(), *printed_sign)?, style)
        }
        Command::Confluence { ty, printed_sign } => {
            commands::confluence(commands::rule_set(ty.get(), *printed_sign)?, style)
        }
        Command::Ybe { ty } => Ok(commands::ybe(ty.get())),
        Command::Rcheck { ty } => commands::rcheck(ty.get()),
        Command::Rtt { ty } => commands::rtt(ty.get()),
        Command::Covariance { ty } => commands::covariance(ty.get(), style),
        Command::Fock { ty, q } => commands::fock(ty.get(), commands::parse_complex(q)?),
        Command::VerifyAll => Ok(commands::verify_all_outcome(cli.seed)),
    }
}

fn render(mode: OutputMode, text: &str, payload: &Value) -> String {
    match mode {
        OutputMode::Text => {
            let mut s = text.to_string();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        OutputMode::Json => {
            let mut s = serde_json::to_string_pretty(payload).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

/// Runs one command line (without the program name), reading `-`
/// expressions from `stdin`.
pub fn run_command_with_stdin(argv: &[String], stdin: &mut dyn Read) -> CommandResult {
    let cli = match Cli::try_parse_from(std::iter::once("qext".to_string()).chain(argv.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let (status, exit_code) = if informational {
                (Status::Value, 0)
            } else {
                (Status::Fail, 2)
            };
            let text = e.render().to_string();
            return CommandResult {
                status,
                payload: json!({ "status": status.as_str(), "error": text }),
                output: text,
                mode: OutputMode::Text,
                exit_code,
            };
        }
    };
    match dispatch(&cli, stdin) {
        Ok(out) => {
            let exit_code = if out.status == Status::Fail { 1 } else { 0 };
            let mut payload = out.payload;
            if let Value::Object(map) = &mut payload {
                map.insert("status".into(), json!(out.status.as_str()));
            }
            CommandResult {
                status: out.status,
                output: render(cli.output, &out.text, &payload),
                payload,
                mode: cli.output,
                exit_code,
            }
        }
        Err(InputError(msg)) => {
            let payload = json!({ "status": "fail", "error": msg });
            CommandResult {
                status: Status::Fail,
                output: render(cli.output, &format!("error: {msg}"), &payload),
                payload,
                mode: cli.output,
                exit_code: 2,
            }
        }
    }
}

pub fn run_command(argv: &[String]) -> CommandResult {
    run_command_with_stdin(argv, &mut std::io::stdin())
}

/// Replaces every leaf of a JSON value by its type name, keeping object
/// keys and the shape of arrays (one representative element).
pub fn json_schema(v: &Value) -> Value {
    match v {
        Value::Null => json!("null"),
        Value::Bool(_) => json!("bool"),
        Value::Number(n) if n.is_f64() => json!("float"),
        Value::Number(_) => json!("int"),
        Value::String(_) => json!("string"),
        Value::Array(items) => {
            let mut shapes: Vec<Value> = Vec::new();
            for s in items.iter().map(json_schema) {
                if !shapes.contains(&s) {
                    shapes.push(s);
                }
            }
            Value::Array(shapes)
        }
        Value::Object(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), json_schema(v))).collect()),
    }
}

/// The pinned view of a `verify-all` JSON report: the schema skeleton plus
/// the family names and verdicts, leaving out free text.
pub fn verify_all_view(payload: &Value) -> Value {
    let families: Vec<Value> = payload["families"]
        .as_array()
        .map(|fs| fs.iter().map(|f| json!([f["family"], f["passed"]])).collect())
        .unwrap_or_default();
    json!({ "schema": json_schema(payload), "families": families })
}
