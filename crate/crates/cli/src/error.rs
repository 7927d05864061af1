//! Error surface of the command layer.
//!
//! Every variant stops a command before it can produce results, so all of
//! them map to the usage/data exit code; check *failures* are reported
//! through [`crate::runner::RunReport`] instead.

use thiserror::Error;

use flp_core::{AlgebroidError, ExteriorError, NambuError, PairError, ParseError};

/// Anything that prevents a command from running to completion.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{field}: {message}")]
    Schema { field: String, message: String },
    #[error("{field}: {source}")]
    Expr { field: String, source: ParseError },
    #[error("section expression `{expr}`: {message}")]
    Section { expr: String, message: String },
    #[error("unknown check `{name}`")]
    UnknownCheck { name: String },
    #[error("missing {what} for check `{check}`")]
    MissingData { what: &'static str, check: String },
    #[error("this command needs {what}")]
    MissingInput { what: &'static str },
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Nambu(#[from] NambuError),
}

impl CliError {
    /// Schema violation at a named field.
    pub fn schema(field: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Schema { field: field.into(), message: message.into() }
    }
}
