use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILED_CHECK: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NUMERIC: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown state reference `{0}`")]
    UnknownStateRef(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] entbreak_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use entbreak_core::Error as E;
        match self {
            CliError::Core(E::NoSignChange { .. } | E::NotConverged { .. }) => exit::NUMERIC,
            CliError::Core(E::CertificateFailure { .. }) => exit::FAILED_CHECK,
            _ => exit::USAGE,
        }
    }

    /// Extra lines printed after the message.
    pub fn notes(&self) -> Vec<String> {
        match self {
            CliError::Core(entbreak_core::Error::NoSignChange { lo, hi, mu_lo, mu_hi }) => [(lo, mu_lo), (hi, mu_hi)]
                .into_iter()
                .map(|(x, mu)| {
                    let verdict = if *mu >= -entbreak_core::tolerance::PSD {
                        "PPT"
                    } else {
                        "NPT"
                    };
                    format!("endpoint {x}: {verdict} (mu_min = {mu:e})")
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
