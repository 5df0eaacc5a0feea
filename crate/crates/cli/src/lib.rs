//! Command-line front end for `bsf-core` and `bsf-ode`, and the catalogue of
//! reproduction checks behind `bsf verify`.

pub mod commands;
pub mod properties;
pub mod tables;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    /// A computation that should succeed did not.
    #[error("{0}")]
    Check(String),
    /// A verify run finished with failing checks; holds the full report.
    #[error("one or more checks failed")]
    CheckReport(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) | CliError::CheckReport(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}
