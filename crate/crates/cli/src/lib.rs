//! Library side of the `jordanis` command-line tool: the algebra file
//! format, report rendering and the command implementations.

pub mod commands;
pub mod file;
pub mod report;

use thiserror::Error;

/// Problems with the user's input. These map to exit code 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Spec(String),
}
