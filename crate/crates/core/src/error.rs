use std::path::PathBuf;

use thiserror::Error;

use crate::classify::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The integrator produced NaN or infinity before the escape check fired.
    /// Almost always means the step is too large for the amplitude reached.
    #[error("non-finite state at t = {t} (step too large?)")]
    NonFiniteState { t: f64 },

    #[error("bracket [{lo}, {hi}] on w0 = {w0} does not straddle a verdict change ({lo_verdict:?} / {hi_verdict:?})")]
    BracketInvalid {
        w0: f64,
        lo: f64,
        hi: f64,
        lo_verdict: Verdict,
        hi_verdict: Verdict,
    },

    #[error("no verdict change found on scan line w0 = {w0}")]
    NoBracket { w0: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_)
            | Error::InvalidArgument(_)
            | Error::Config(_)
            | Error::Json { .. }
            | Error::Parse { .. } => 2,
            Error::NonFiniteState { .. } => 3,
            Error::BracketInvalid { .. } | Error::NoBracket { .. } => 4,
            Error::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
