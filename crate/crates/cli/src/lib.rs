//! Library side of the `poissonkit` command-line tool: document ingest and check dispatch.

pub mod commands;
pub mod document;

pub use commands::{exit_code, run, Command, Options, RunError};
pub use document::{ingest, DocError, Document};
