//! Command dispatch for the `kforest` binary.
//!
//! [`run`] parses arguments, reads the document and renders one report. It
//! returns the exit code and both output streams instead of printing, so the
//! binary and the tests share one code path.

pub mod generate;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use kforest::document::GraphDocument;
use kforest::report::{
    condense_report, hierarchy_report, oracle_report, phi_report, potential_report, Format,
};
use kforest::search::{DEFAULT_ENUMERATION_CAP, DEFAULT_ORACLE_CAP};
use kforest::{CondenseError, HierarchyError, SearchError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_NOT_CONDENSABLE: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "kforest",
    version,
    about = "Minimum k-tree spanning forests and weighted condensations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Check the hierarchy claims or condensation equalities; failures exit 3.
    #[arg(long, global = true)]
    pub verify: bool,

    /// Largest vertex count the brute-force oracle accepts.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP, value_parser = positive, global = true)]
    pub oracle_cap: usize,

    /// Most extreme forests enumerated per level.
    #[arg(long = "enum-cap", default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = positive, global = true)]
    pub enumeration_cap: usize,

    /// Seed for `random`.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// φ_k table with representative forests.
    Phi { input: Option<PathBuf> },
    /// Atoms, marks and attraction domains of every level.
    Hierarchy { input: Option<PathBuf> },
    /// Weighted condensation of one level.
    Condense {
        #[arg(long)]
        level: usize,
        input: Option<PathBuf>,
    },
    /// Potential representation of the weights, or a violation.
    CheckPotential { input: Option<PathBuf> },
    /// Brute-force φ_k and all extreme forests.
    Oracle {
        #[arg(long)]
        k: usize,
        input: Option<PathBuf>,
    },
    /// A random graph document.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, value_enum, default_value_t = RandomKind::Directed)]
        kind: RandomKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RandomKind {
    Directed,
    Undirected,
    Potential,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    execute(&cli, stdin)
}

fn read_document(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<GraphDocument, Outcome> {
    let (name, text) = match input {
        Some(path) if path.as_os_str() != "-" => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Outcome::fail(
                    EXIT_PARSE,
                    format!("error: cannot read {}: {e}\n", path.display()),
                )
            })?;
            (path.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| {
                Outcome::fail(EXIT_PARSE, format!("error: cannot read stdin: {e}\n"))
            })?;
            ("<stdin>".to_string(), text)
        }
    };
    GraphDocument::parse(&text).map_err(|e| {
        Outcome::fail(
            EXIT_PARSE,
            format!("error: {name}:{}:{}: {}\n", e.line, e.column, e.message),
        )
    })
}

fn format_of(f: OutputFormat) -> Format {
    match f {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
        OutputFormat::Dot => Format::Dot,
    }
}

fn no_dot(command: &str) -> Outcome {
    Outcome::fail(EXIT_PARSE, format!("error: {command} has no DOT output\n"))
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let format = format_of(cli.format);
    match &cli.command {
        Command::Phi { input } => match read_document(input, stdin) {
            Ok(doc) => Outcome::ok(phi_report(&doc).render(format)),
            Err(o) => o,
        },
        Command::Hierarchy { input } => {
            let doc = match read_document(input, stdin) {
                Ok(doc) => doc,
                Err(o) => return o,
            };
            match hierarchy_report(&doc, cli.enumeration_cap, cli.verify) {
                Ok(report) => {
                    let mut out = Outcome::ok(report.render(format));
                    if report.failures() > 0 {
                        out.code = EXIT_VERIFY;
                        out.stderr =
                            format!("error: {} hierarchy checks failed\n", report.failures());
                    } else if cli.verify && !report.unverified_levels.is_empty() {
                        out.code = EXIT_CAP;
                        out.stderr = format!(
                            "error: levels {:?} could not be verified within --enum-cap {}\n",
                            report.unverified_levels, cli.enumeration_cap
                        );
                    }
                    out
                }
                Err(e @ HierarchyError::NestingViolated { .. }) => {
                    Outcome::fail(EXIT_VERIFY, format!("error: {e}\n"))
                }
                Err(e) => Outcome::fail(EXIT_CAP, format!("error: {e}\n")),
            }
        }
        Command::Condense { level, input } => {
            let doc = match read_document(input, stdin) {
                Ok(doc) => doc,
                Err(o) => return o,
            };
            match condense_report(&doc, *level, cli.enumeration_cap) {
                Ok(report) => {
                    let mut out = Outcome::ok(report.render(format));
                    if cli.verify && !report.consistency.pass {
                        out.code = EXIT_VERIFY;
                        out.stderr = "error: condensation consistency check failed\n".into();
                    }
                    out
                }
                Err(e @ CondenseError::LevelNotCondensable { .. }) => Outcome {
                    code: EXIT_NOT_CONDENSABLE,
                    stdout: phi_report(&doc).text(),
                    stderr: format!("error: {e}\n"),
                },
                Err(e) => Outcome::fail(EXIT_CAP, format!("error: {e}\n")),
            }
        }
        Command::CheckPotential { input } => match read_document(input, stdin) {
            Ok(doc) => match potential_report(&doc).render(format) {
                Some(text) => Outcome::ok(text),
                None => no_dot("check-potential"),
            },
            Err(o) => o,
        },
        Command::Oracle { k, input } => {
            let doc = match read_document(input, stdin) {
                Ok(doc) => doc,
                Err(o) => return o,
            };
            match oracle_report(&doc, *k, cli.oracle_cap) {
                Ok(report) => match report.render(format) {
                    Some(text) => Outcome::ok(text),
                    None => no_dot("oracle"),
                },
                Err(e @ SearchError::CapExceeded { .. }) => {
                    Outcome::fail(EXIT_CAP, format!("error: {e}; raise --oracle-cap\n"))
                }
                Err(e) => Outcome::fail(EXIT_PARSE, format!("error: {e}\n")),
            }
        }
        Command::Random {
            vertices,
            density,
            kind,
        } => {
            if *vertices == 0 || !(0.0..=1.0).contains(density) {
                return Outcome::fail(
                    EXIT_PARSE,
                    "error: need --vertices >= 1 and --density in [0, 1]\n",
                );
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let labels = GraphDocument::numbered_labels(*vertices);
            let doc = match kind {
                RandomKind::Directed => GraphDocument::from_digraph(
                    &generate::random_digraph(&mut rng, *vertices, *density),
                    labels,
                ),
                RandomKind::Undirected => GraphDocument::from_graph(
                    &generate::random_graph(&mut rng, *vertices, *density),
                    labels,
                ),
                RandomKind::Potential => GraphDocument::from_digraph(
                    &generate::random_potential(&mut rng, *vertices, *density).to_digraph(),
                    labels,
                ),
            };
            let mut text =
                serde_json::to_string_pretty(&doc.to_json()).expect("documents serialize");
            text.push('\n');
            Outcome::ok(text)
        }
    }
}
