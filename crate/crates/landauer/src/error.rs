use std::fmt;

/// A failed command, classified by process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or an input the library rejects up front. Exit 2.
    Usage(String),
    /// A numerical failure or an I/O error. Exit 1.
    Numeric(String),
    /// `--verify` found a result outside tolerance. Exit 3.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 1,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Numeric(msg) | CliError::Verification(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<landauer_core::Error> for CliError {
    fn from(err: landauer_core::Error) -> Self {
        use landauer_core::Error as E;
        match err {
            E::NoConvergence { .. } | E::Overflow { .. } => CliError::Numeric(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Numeric(format!("i/o error: {err}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Numeric(format!("json error: {err}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Numeric(format!("csv error: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
