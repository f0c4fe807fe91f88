//! Command-line front end: JSON documents in, canonical JSON out.
//!
//! Exit codes: 0 success, 1 input error, 2 conflicting information (the
//! witness goes to stderr), 3 failed check.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use belief_algebra::world::DEFAULT_MAX_WORLDS;
use belief_algebra::Conflict;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod commands;
pub mod demo;
pub mod document;

pub use document::{Document, Kind, Side};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("conflicting information: {0}")]
    Conflict(Conflict),
    /// A check ran and failed; the report is still printed.
    #[error("{message}")]
    Check { report: String, message: String },
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure::Input(message.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Conflict(_) => 2,
            Failure::Check { .. } => 3,
        }
    }

    fn diagnostic(&self) -> String {
        match self {
            Failure::Conflict(c) => {
                let w = c.witness();
                let json = serde_json::to_string(&document::pair_json(w)).expect("plain arrays");
                format!("error: {self}\nwitness: {json}\n")
            }
            _ => format!("error: {self}\n"),
        }
    }
}

impl From<belief_algebra::Error> for Failure {
    fn from(e: belief_algebra::Error) -> Self {
        match e {
            belief_algebra::Error::Conflict(c) => Failure::Conflict(c),
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "belalg", version, about = "Iterated belief revision over belief algebras")]
pub struct Cli {
    /// Largest number of worlds a document may describe.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WORLDS)]
    pub max_worlds: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Document to read; stdin when absent.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReviseArgs {
    #[command(flatten)]
    pub input: Input,
    /// Evidence document.
    #[arg(long)]
    pub evidence: Option<PathBuf>,
    /// Evidence formula μ, read as [μ] ≫ [¬μ]. Repeatable.
    #[arg(long)]
    pub formula: Vec<String>,
    /// Conditional "beta|alpha", read as [α∧β] ≫ [α∧¬β]. Repeatable.
    #[arg(long)]
    pub conditional: Vec<String>,
    /// Also emit the intermediate algebras.
    #[arg(long)]
    pub trace: bool,
    /// Emit a small generating set instead of the full relation.
    #[arg(long)]
    pub as_generators: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// Evidence is the single formula.
    Formula,
    /// Evidence is the formula plus a conditional.
    Conditional,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Close a relation document into the smallest belief algebra.
    Gen {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        as_generators: bool,
    },
    /// Print the backbone as a preorder document.
    Backbone {
        #[command(flatten)]
        input: Input,
    },
    /// Print the completion.
    Com {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        as_generators: bool,
    },
    /// Revise the input belief by evidence.
    Revise(ReviseArgs),
    /// Revise one preorder document by another.
    RevisePreorder {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        evidence: PathBuf,
    },
    /// Check the axioms of a document, or fuzz the revision postulates.
    Check {
        #[command(flatten)]
        input: Input,
        /// Number of sampled revision trials.
        #[arg(long)]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in two-atom revision scenario.
    Demo {
        #[arg(long, value_enum, default_value_t = Variant::Formula)]
        variant: Variant,
    },
}

/// What a run writes and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    match execute(cli, stdin) {
        Ok(stdout) => Outcome { stdout, stderr: String::new(), code: 0 },
        Err(f @ Failure::Check { .. }) => {
            let Failure::Check { report, .. } = &f else { unreachable!() };
            Outcome { stdout: report.clone(), stderr: f.diagnostic(), code: 3 }
        }
        Err(f) => Outcome { stdout: String::new(), stderr: f.diagnostic(), code: f.exit_code() },
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String, Failure> {
    let max = cli.max_worlds;
    let read_doc = |input: &Input, stdin: &mut dyn Read| -> Result<Document, Failure> {
        Document::parse(&read_input(input.input.as_deref(), stdin)?)
    };
    match &cli.command {
        Command::Gen { input, as_generators } => {
            Ok(commands::cmd_gen(&read_doc(input, stdin)?, max, *as_generators)?.to_json())
        }
        Command::Backbone { input } => Ok(commands::cmd_backbone(&read_doc(input, stdin)?, max)?.to_json()),
        Command::Com { input, as_generators } => {
            Ok(commands::cmd_com(&read_doc(input, stdin)?, max, *as_generators)?.to_json())
        }
        Command::Revise(args) => {
            let current = read_doc(&args.input, stdin)?;
            let evidence = commands::EvidenceSpec {
                document: args.evidence.as_deref().map(read_file).transpose()?,
                formulas: args.formula.clone(),
                conditionals: args.conditional.clone(),
            };
            let out = commands::cmd_revise(&current, &evidence, max, args.trace, args.as_generators)?;
            Ok(out.to_json())
        }
        Command::RevisePreorder { input, evidence } => {
            let p1 = read_doc(input, stdin)?;
            let p2 = read_file(evidence)?;
            Ok(commands::cmd_revise_preorder(&p1, &p2, max)?.to_json())
        }
        Command::Check { input, fuzz, seed } => {
            // Fuzzing alone needs no document; stdin is read only without --fuzz.
            let doc = match (&input.input, fuzz) {
                (None, Some(_)) => None,
                _ => Some(read_doc(input, stdin)?),
            };
            let report = commands::cmd_check(doc.as_ref(), fuzz.map(|n| (n, *seed)), max)?;
            let json = report.to_json();
            if report.passed {
                Ok(json)
            } else {
                Err(Failure::Check { report: json, message: report.failure_summary() })
            }
        }
        Command::Demo { variant } => {
            let report = demo::run(*variant);
            if report.consistent {
                Ok(report.text)
            } else {
                Err(Failure::Check { report: report.text, message: "demo disagrees with a reference set".into() })
            }
        }
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match path {
        Some(p) => read_text(p),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<Document, Failure> {
    Document::parse(&read_text(path)?)
}
