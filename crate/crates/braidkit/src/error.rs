use std::path::PathBuf;

use braidkit_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {error}")]
    InFile { path: String, error: Error },
    #[error("{0}")]
    Usage(String),
    /// Checks ran and some failed; the report has already been printed.
    #[error("{0}")]
    ChecksFailed(String),
}

// core errors are no_std and do not implement std::error::Error
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

fn core_code(e: &Error) -> i32 {
    match e.root() {
        Error::VerificationFailed(_) | Error::CrossedModuleViolation(_) => exit::VERIFY,
        Error::NonTerminating { .. }
        | Error::CompletionBudgetExceeded(_)
        | Error::UnorientablePair(_)
        | Error::Unsolvable(_)
        | Error::NotAUnit(_) => exit::INTERNAL,
        _ => exit::PARSE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) | CliError::InFile { error: e, .. } => core_code(e),
            CliError::Io { .. } | CliError::Usage(_) => exit::PARSE,
            CliError::ChecksFailed(_) => exit::VERIFY,
        }
    }
}
