//! Spec-file language and command-line front end for `modalprob-core`.
//!
//! [`spec::parse`] reads the line-oriented spec format, [`commands`] turns a
//! parsed file into reports, and [`run`] ties both together with the exit
//! status contract: 0 when every check passes, 1 on an axiom violation,
//! failed check or belief contradiction, 2 on usage or parse errors.
#![deny(missing_docs)]

pub mod commands;
pub mod model;
pub mod report;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use modalprob_core::EnumerationCap;

pub use commands::{Command, Options};
pub use report::Report;
pub use spec::{parse, Diagnostic, Parsed, Severity, SpecFile};

/// Exit status for passing runs.
pub const EXIT_PASS: i32 = 0;
/// Exit status for violations, failed checks and contradictions.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for usage and parse errors.
pub const EXIT_USAGE: i32 = 2;

/// What a run prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Report text.
    pub stdout: String,
    /// Diagnostics and usage errors.
    pub stderr: String,
    /// Process exit status.
    pub code: i32,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "modalprob",
    version,
    about = "Check finite probability spaces against a possibility space"
)]
struct Cli {
    /// Emit `section.key=value` records instead of text.
    #[arg(long, global = true)]
    machine: bool,
    /// Seed for `simulate` and the `theorems` campaign; overrides the spec.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Randomized trials run by `theorems`.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
    /// Largest atom count enumerated exhaustively (at most 30).
    #[arg(long, global = true, default_value_t = 20)]
    max_atoms: usize,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Check the measure against the probability axioms.
    Validate { file: PathBuf },
    /// Probability, significance and modal class of an event.
    Classify { file: PathBuf, event: String },
    /// Condition the measure on an event.
    Condition { file: PathBuf, event: String },
    /// Check that every impossible event is insignificant.
    Correspondence { file: PathBuf },
    /// Run the exhaustive oracles, bucket bound and a randomized campaign.
    Theorems { file: PathBuf },
    /// Drop the zero-weight atoms so that possible and significant coincide.
    Reduce { file: PathBuf },
    /// Simulate the multinomial block.
    Simulate { file: PathBuf },
    /// Close the beliefs block under the implication rules.
    Beliefs { file: PathBuf },
}

/// A parsed command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    /// Subcommand and argument.
    pub command: Command,
    /// Spec file path.
    pub file: PathBuf,
    /// Flags.
    pub options: Options,
}

/// Parses command-line arguments (including the program name).
///
/// `--help` and `--version` come back as an `Err` with exit status 0.
pub fn parse_args<I, T>(args: I) -> Result<Invocation, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() {
            EXIT_USAGE
        } else {
            EXIT_PASS
        };
        let text = e.render().to_string();
        if code == EXIT_PASS {
            Outcome {
                stdout: text,
                stderr: String::new(),
                code,
            }
        } else {
            Outcome {
                stdout: String::new(),
                stderr: text,
                code,
            }
        }
    })?;
    let cap = EnumerationCap::new(cli.max_atoms).ok_or_else(|| {
        Outcome::usage(format!(
            "--max-atoms must be at most {}",
            EnumerationCap::MAX
        ))
    })?;
    let (command, file) = match cli.command {
        Sub::Validate { file } => (Command::Validate, file),
        Sub::Classify { file, event } => (Command::Classify(event), file),
        Sub::Condition { file, event } => (Command::Condition(event), file),
        Sub::Correspondence { file } => (Command::Correspondence, file),
        Sub::Theorems { file } => (Command::Theorems, file),
        Sub::Reduce { file } => (Command::Reduce, file),
        Sub::Simulate { file } => (Command::Simulate, file),
        Sub::Beliefs { file } => (Command::Beliefs, file),
    };
    Ok(Invocation {
        command,
        file,
        options: Options {
            machine: cli.machine,
            seed: cli.seed,
            trials: cli.trials,
            cap,
        },
    })
}

/// Parses `text` and runs `command`. `name` prefixes diagnostics.
pub fn run(command: &Command, name: &str, text: &str, options: &Options) -> Outcome {
    let parsed = parse(text);
    let mut stderr = String::new();
    for d in &parsed.diagnostics {
        stderr.push_str(&format!("{name}:{d}\n"));
    }
    let Some(spec) = parsed.spec else {
        return Outcome {
            stdout: String::new(),
            stderr,
            code: EXIT_USAGE,
        };
    };
    match commands::execute(command, &spec, options) {
        Ok((report, ok)) => Outcome {
            stdout: if options.machine {
                report.to_machine()
            } else {
                report.to_text()
            },
            stderr,
            code: if ok { EXIT_PASS } else { EXIT_VIOLATION },
        },
        Err(e) => {
            stderr.push_str(&format!("{name}: error: {e}\n"));
            Outcome {
                stdout: String::new(),
                stderr,
                code: EXIT_USAGE,
            }
        }
    }
}

/// Full command-line entry point: argument parsing, file reading, dispatch.
pub fn main_with<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let inv = match parse_args(args) {
        Ok(inv) => inv,
        Err(outcome) => return outcome,
    };
    let name = inv.file.display().to_string();
    match std::fs::read(&inv.file) {
        Ok(bytes) => match String::from_utf8(bytes) {
            Ok(text) => run(&inv.command, &name, &text, &inv.options),
            Err(_) => Outcome::usage(format!("{name}: not valid UTF-8")),
        },
        Err(e) => Outcome::usage(format!("{name}: {e}")),
    }
}
