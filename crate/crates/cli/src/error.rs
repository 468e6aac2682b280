use std::fmt;

use serde::Serialize;

/// Failures of a run, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Exit code 2.
    Usage(String),
    /// Invalid input data or a failed computation; exit code 1.
    Domain(String),
    /// Reading or writing files; exit code 1.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<gvfan_core::Error> for CliError {
    fn from(e: gvfan_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<gvfan_algebra::Error> for CliError {
    fn from(e: gvfan_algebra::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<gvfan_scatter::Error> for CliError {
    fn from(e: gvfan_scatter::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Body printed on stdout when a run fails.
#[derive(Serialize)]
pub struct ErrorReport<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub error: ErrorBody<'a>,
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'static str,
    pub message: &'a str,
}
