//! The `cayley` command-line tool.
//!
//! [`run`] parses a command line, executes it and returns the text to print
//! together with the exit code: 0 on success, 2 when a verification finds a
//! counterexample, 1 on usage or input errors.

mod commands;
mod input;

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub use input::{parse_ids, parse_mode, parse_word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cayley", version, about = "Cayley machines of finite semigroups")]
pub struct Cli {
    /// Output style: human-readable text or a JSON report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Data,
}

/// Where the semigroup comes from: a JSON file or a catalog key.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Semigroup file (`{"name", "elements", "table"}`).
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    pub file: Option<std::path::PathBuf>,

    /// Built-in semigroup: S1, S2, S3, S4, S5, M5 or trivial.
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct MachineArgs {
    #[command(flatten)]
    pub input: Input,

    /// `full`, `ideal=<elements>` or `trace=<elements>`.
    #[arg(long, default_value = "full")]
    pub mode: String,

    /// Maximum number of machine states built for one element.
    #[arg(long = "state-budget", default_value_t = cayley::machine::DEFAULT_STATE_BUDGET)]
    pub state_budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a semigroup and its basic properties.
    Show {
        #[command(flatten)]
        input: Input,
        /// Accept non-associative tables and report the violation.
        #[arg(long)]
        allow_magma: bool,
    },
    /// Green's relations as an eggbox diagram.
    Green {
        #[command(flatten)]
        input: Input,
    },
    /// Rees coordinates and structure matrix of a J-class.
    Rees {
        #[command(flatten)]
        input: Input,
        /// Elements of the J-class, comma separated.
        #[arg(long)]
        jclass: String,
    },
    /// Enumerate `Cayley(S)` or a restriction of it.
    Enumerate {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, default_value_t = cayley::enumeration::DEFAULT_MAX_ELEMENTS)]
        max: usize,
    },
    /// Apply a generator word `s_n,…,s_1` to an input word.
    Apply {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// The Pascal array of a generator word on an input word.
    Pascal {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        input: String,
    },
    /// The portrait of an element down to a depth.
    Portrait {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Emit DOT instead of the text tree.
        #[arg(long)]
        dot: bool,
    },
    /// DOT for the minimal machine of a word, or for the Cayley automaton.
    Dot {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long)]
        word: Option<String>,
        /// Write the DOT text to a file instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// The memory semigroup: `φ_mem` of a word, or the aperiodicity index.
    Mem {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        index: bool,
    },
    /// Rhodes expansion word arithmetic.
    Rhodes {
        #[command(subcommand)]
        action: RhodesAction,
    },
    /// Check that `mem` equality implies `Cayley(S, I)` equality.
    Divide {
        #[command(flatten)]
        input: Input,
        /// Elements of the regular 0-minimal ideal.
        #[arg(long)]
        ideal: String,
        #[arg(long = "max-len", default_value_t = 4)]
        max_len: usize,
    },
    /// Stable words and the semidirect-product embedding.
    Tower {
        #[command(subcommand)]
        action: TowerAction,
    },
    /// Check the aperiodicity theorem on all semigroups of an order.
    VerifyTheorem {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = cayley::enumeration::DEFAULT_MAX_ELEMENTS)]
        max: usize,
    },
    /// List all semigroups of an order up to isomorphism.
    GenOrder {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RhodesAction {
    /// Reduce a chain `x_1,…,x_m`.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        word: String,
    },
    /// Multiply two chains.
    Mul {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TowerArgs {
    #[command(flatten)]
    pub input: Input,
    /// Elements of the ideal `T`.
    #[arg(long)]
    pub ideal: String,
    /// Elements of the J-class directly above `T`.
    #[arg(long)]
    pub jclass: String,
}

#[derive(Subcommand, Debug)]
pub enum TowerAction {
    /// Verify the embedding, index additivity and the trace quotient.
    Verify {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long = "max-len", default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = cayley::enumeration::DEFAULT_MAX_ELEMENTS)]
        max: usize,
    },
    /// Whether an input word is stable for a generator word.
    Stable {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        input: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    VerdictFailed,
    Error,
}

/// The structured form of one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub status: Status,
    pub result: Value,
    pub timing_ms: f64,
}

/// What a command produced.
pub(crate) struct Output {
    pub text: String,
    pub data: Value,
    pub passed: bool,
}

impl Output {
    pub fn ok(text: String, data: Value) -> Self {
        Output { text, data, passed: true }
    }

    pub fn verdict(text: String, data: Value, passed: bool) -> Self {
        Output { text, data, passed }
    }
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<RunReport>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new(), report: None }
            } else {
                Outcome { code, stdout: String::new(), stderr: text, report: None }
            };
        }
    };
    let start = Instant::now();
    let result = commands::execute(&cli.command);
    let timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    let (status, text, data) = match result {
        Ok(out) if out.passed => (Status::Ok, out.text, out.data),
        Ok(out) => (Status::VerdictFailed, out.text, out.data),
        Err(e) => (Status::Error, e.to_string(), serde_json::json!({ "message": e.to_string() })),
    };
    let code = match status {
        Status::Ok => EXIT_OK,
        Status::VerdictFailed => EXIT_VERDICT,
        Status::Error => EXIT_ERROR,
    };
    let report = RunReport { command: echo, status, result: data, timing_ms };
    match cli.format {
        Format::Data => Outcome {
            code,
            stdout: serde_json::to_string_pretty(&report).expect("serializable") + "\n",
            stderr: String::new(),
            report: Some(report),
        },
        Format::Text if status == Status::Error => Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {text}\n"),
            report: Some(report),
        },
        Format::Text => Outcome { code, stdout: text, stderr: String::new(), report: Some(report) },
    }
}
