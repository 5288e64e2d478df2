//! Command-line front end for `wwcat_core`: JSON documents in, JSON
//! verdicts out, with the answer also carried by the exit code.

pub mod app;
pub mod commands;
pub mod document;
pub mod error;
pub mod verdict;

pub use document::{parse_document, Document, Library, Morphism, PathDoc};
pub use error::{CliError, Exit};
pub use verdict::Verdict;
