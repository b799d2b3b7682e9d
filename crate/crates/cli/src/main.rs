//! `modelkit` command-line runner.
//!
//! Exit codes: 0 success, 1 validation or precondition failure, 2 usage
//! error or unknown task, 3 parse or I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use modelkit::{parse_model, registry, serialize_model, validate, Model, TaskId, TaskOutput};

#[derive(Parser)]
#[command(name = "modelkit", version, about = "Run primitive model transformation tasks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every task with its input and output kinds
    List,
    /// Run one task
    Run {
        /// Task id, see `modelkit list`
        task: String,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a model file against a builtin metamodel
    Validate {
        path: PathBuf,
        #[arg(long)]
        metamodel: String,
    },
}

/// A failed command: its exit code and a diagnostic for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn read_model(path: &Path) -> Result<Model, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

fn write_stdout(bytes: &[u8]) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(bytes)
        .and_then(|()| out.flush())
        .map_err(|e| Failure::io(format!("cannot write to stdout: {e}")))
}

fn cmd_list() -> Result<(), Failure> {
    let mut text = String::new();
    for task in TaskId::ALL {
        text.push_str(&format!(
            "{:<20} input: {:<9} output: {}\n",
            task.name(),
            task.input(),
            task.output()
        ));
    }
    write_stdout(text.as_bytes())
}

fn cmd_run(task: &str, input: Option<&Path>, output: Option<&Path>) -> Result<(), Failure> {
    let task: TaskId = task
        .parse()
        .map_err(|e| Failure::usage(format!("{e}; run `modelkit list`")))?;
    let model = match (task.input().metamodel(), input) {
        (None, None) => None,
        (None, Some(_)) => return Err(Failure::usage(format!("task {task} takes no --input"))),
        (Some(expected), None) => {
            return Err(Failure::usage(format!(
                "task {task} requires --input with a {expected} model"
            )))
        }
        (Some(expected), Some(path)) => {
            let model = read_model(path)?;
            if model.metamodel_name() != expected {
                return Err(Failure::invalid(format!(
                    "{}: task {task} expects a {expected} model, found {:?}",
                    path.display(),
                    model.metamodel_name()
                )));
            }
            let mm = registry()
                .get(expected)
                .expect("task inputs are builtin metamodels")
                .clone();
            let violations = validate(&model, &mm).expect("metamodel name checked above");
            if !violations.is_empty() {
                let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
                return Err(Failure::invalid(format!(
                    "{} does not conform to {expected}:\n{}",
                    path.display(),
                    lines.join("\n")
                )));
            }
            Some(model)
        }
    };

    let result = task
        .run(model.as_ref())
        .map_err(|e| Failure::invalid(format!("task {task} failed: {e}")))?;
    match result {
        TaskOutput::Model(m) => {
            let bytes = serialize_model(&m);
            match output {
                Some(path) => write_file(path, &bytes),
                None => write_stdout(&bytes),
            }
        }
        TaskOutput::Value(v) => {
            if let Some(path) = output {
                write_file(path, &serialize_model(&v.to_model()))?;
            }
            write_stdout(format!("{v}\n").as_bytes())
        }
    }
}

fn cmd_validate(path: &Path, metamodel: &str) -> Result<(), Failure> {
    let model = read_model(path)?;
    let registry = registry();
    let mm = registry.get(metamodel).ok_or_else(|| {
        let known: Vec<&str> = registry.names().collect();
        Failure::usage(format!("unknown metamodel {metamodel:?}; known: {}", known.join(", ")))
    })?;
    let violations = validate(&model, mm).map_err(|e| Failure::invalid(e.to_string()))?;
    let text: String = violations.iter().map(|v| format!("{v}\n")).collect();
    write_stdout(text.as_bytes())?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::invalid(format!("{} violation(s)", violations.len())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::List => cmd_list(),
        Command::Run { task, input, output } => cmd_run(task, input.as_deref(), output.as_deref()),
        Command::Validate { path, metamodel } => cmd_validate(path, metamodel),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("modelkit: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
