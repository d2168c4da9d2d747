use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("{path}: duplicate point {point} at lines {first} and {second}")]
    DuplicatePoint {
        path: String,
        point: String,
        first: usize,
        second: usize,
    },

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("output failed: {0}")]
    Output(String),

    #[error(transparent)]
    Core(#[from] qid_core::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
