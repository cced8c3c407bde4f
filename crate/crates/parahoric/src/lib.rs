//! Group descriptors, file formats, the command-line verbs and the verification
//! suites built on `parahoric-core`.

pub mod commands;
pub mod descriptor;
pub mod formats;
pub mod library;
pub mod verify;

/// Errors surfaced by the command line: bad input (exit code 2) or a failed
/// computation (exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<parahoric_core::Error> for CliError {
    fn from(e: parahoric_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}
