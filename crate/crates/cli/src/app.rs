//! Argument parsing and reference resolution.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, Mode};
use crate::document::{Document, EngineKind, Library, Morphism, PathDoc};
use crate::error::{CliError, Exit, Result};
use crate::verdict::Verdict;

#[derive(Debug, Parser)]
#[command(
    name = "wwcat",
    version,
    about = "Exact computations with relations and their two-term factorizations"
)]
pub struct Cli {
    /// Load named documents from a file; may be repeated.
    #[arg(long = "file", global = true, value_name = "PATH")]
    pub files: Vec<String>,

    /// Require every morphism and path to belong to this engine.
    #[arg(long, global = true, value_enum)]
    pub engine: Option<EngineArg>,

    /// Compact single-line JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,

    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Finrel,
    Symplin,
}

impl From<EngineArg> for EngineKind {
    fn from(e: EngineArg) -> EngineKind {
        match e {
            EngineArg::Finrel => EngineKind::FinRel,
            EngineArg::Symplin => EngineKind::SympLin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Prop4,
    Ww,
}

/// Every `REF` is a document name from `--file`, inline JSON, `-` for
/// standard input, or a file path (its last document is used).
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose two morphisms `f ∘ g` and analyse the pair.
    Compose { f: String, g: String },
    /// Evaluate a predicate; exit 0 if it holds and 1 if not.
    Check { f: String, predicate: String },
    /// Two-term factorization of a symplin path (or a single canrel).
    Factorize {
        path: String,
        #[arg(long, value_enum, default_value = "ww")]
        mode: ModeArg,
    },
    /// Collapse strongly transversal pairs until none is left.
    Normalize { path: String },
    /// Replay a factorization trace against a path.
    Verify { path: String, factorization: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Compose { .. } => "compose",
            Command::Check { .. } => "check",
            Command::Factorize { .. } => "factorize",
            Command::Normalize { .. } => "normalize",
            Command::Verify { .. } => "verify",
        }
    }
}

struct Resolver {
    library: Library,
    engine: Option<EngineKind>,
}

impl Resolver {
    fn document(&mut self, reference: &str) -> Result<Document> {
        if let Some(doc) = self.library.get(reference) {
            return Ok(doc.clone());
        }
        let trimmed = reference.trim_start();
        let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
            reference.to_string()
        } else if reference == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io {
                    path: "<stdin>".into(),
                    message: e.to_string(),
                })?;
            s
        } else {
            read_file(reference)?
        };
        self.library.load(&text)?;
        Ok(self
            .library
            .entries()
            .last()
            .expect("load adds at least one document")
            .doc
            .clone())
    }

    fn require_engine(&self, found: EngineKind, reference: &str) -> Result<()> {
        match self.engine {
            Some(e) if e != found => Err(CliError::Usage(format!(
                "`{reference}` belongs to the {} engine but --engine {} was given",
                found.as_str(),
                e.as_str()
            ))),
            _ => Ok(()),
        }
    }

    fn morphism(&mut self, reference: &str) -> Result<Morphism> {
        let doc = self.document(reference)?;
        let m = doc.as_morphism().ok_or_else(|| {
            CliError::Usage(format!(
                "`{reference}` is a {}, expected finrel or canrel",
                doc.kind()
            ))
        })?;
        self.require_engine(m.engine(), reference)?;
        Ok(m)
    }

    /// A path document, or a single morphism read as a one-entry word.
    fn path(&mut self, reference: &str) -> Result<PathDoc> {
        let p = match self.document(reference)? {
            Document::Path(p) => p,
            Document::FinRel(f) => PathDoc::Fin {
                word: vec![f],
                object: None,
            },
            Document::CanRel(f) => PathDoc::Lin {
                word: vec![f],
                object: None,
            },
            d => {
                return Err(CliError::Usage(format!(
                    "`{reference}` is a {}, expected a path",
                    d.kind()
                )))
            }
        };
        self.require_engine(p.engine(), reference)?;
        Ok(p)
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

fn execute(cli: &Cli) -> Result<Verdict> {
    let mut resolver = Resolver {
        library: Library::new(),
        engine: cli.engine.map(EngineKind::from),
    };
    for path in &cli.files {
        resolver.library.load(&read_file(path)?)?;
    }
    match &cli.command {
        Command::Compose { f, g } => {
            let f = resolver.morphism(f)?;
            let g = resolver.morphism(g)?;
            commands::compose(&f, &g)
        }
        Command::Check { f, predicate } => {
            let f = resolver.morphism(f)?;
            commands::check(&f, predicate)
        }
        Command::Factorize { path, mode } => {
            let p = resolver.path(path)?;
            let mode = match mode {
                ModeArg::Prop4 => Mode::Prop4,
                ModeArg::Ww => Mode::Ww,
            };
            commands::factorize(&p, mode)
        }
        Command::Normalize { path } => {
            let p = resolver.path(path)?;
            commands::normalize(&p)
        }
        Command::Verify {
            path,
            factorization,
        } => {
            let p = resolver.path(path)?;
            let fact = match resolver.document(factorization)? {
                Document::Factorization(f) => f,
                d => {
                    return Err(CliError::Usage(format!(
                        "`{factorization}` is a {}, expected a factorization",
                        d.kind()
                    )))
                }
            };
            commands::verify(&p, &fact)
        }
    }
}

/// What the binary prints and the code it exits with.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Option<String>,
    pub exit: Exit,
}

pub fn run(cli: &Cli) -> Outcome {
    let pretty = cli.pretty;
    match execute(cli) {
        Ok(v) => Outcome {
            stdout: v.render(pretty),
            stderr: None,
            exit: if v.ok { Exit::Ok } else { Exit::False },
        },
        Err(e) => Outcome {
            stdout: Verdict::error(cli.command.name(), &e).render(pretty),
            stderr: Some(format!("wwcat: {e}")),
            exit: e.exit(),
        },
    }
}
