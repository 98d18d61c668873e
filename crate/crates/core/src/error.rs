use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion of a scalar that is not a single term `c·q^n`.
    NotAUnit(String),
    SignatureMismatch(String),
    BadGrouping(String),
    /// Reduction exceeded the step budget of the presentation.
    NonTerminating { steps: usize },
    CompletionBudgetExceeded(String),
    /// A derived relation whose leading coefficient does not divide the rest.
    UnorientablePair(String),
    MissingEntry(String),
    UnknownEntry(String),
    UnknownGenerator { name: String, column: usize },
    Syntax { message: String, column: usize },
    CrossedModuleViolation(String),
    /// A linear system with no solution in the Laurent ring.
    Unsolvable(String),
    Invalid(String),
    /// A verification suite reported failures.
    VerificationFailed(String),
    /// An error inside a definition, at 1-based line and column.
    Located { line: usize, column: usize, source: Box<Error> },
}

impl Error {
    /// Attach a position; columns inside the expression are offset by `column - 1`.
    pub fn at(self, line: usize, column: usize) -> Error {
        if line == 0 {
            return self;
        }
        match self {
            Error::Located { .. } => self,
            Error::Syntax { column: c, .. } | Error::UnknownGenerator { column: c, .. } => {
                let col = column + c - 1;
                Error::Located { line, column: col, source: Box::new(self) }
            }
            other => Error::Located { line, column, source: Box::new(other) },
        }
    }

    /// The error with any position stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAUnit(s) => write!(f, "scalar `{s}` is not a unit monomial"),
            Error::SignatureMismatch(s) => write!(f, "signature mismatch: {s}"),
            Error::BadGrouping(s) => write!(f, "bad grouping: {s}"),
            Error::NonTerminating { steps } => {
                write!(f, "reduction did not terminate within {steps} steps")
            }
            Error::CompletionBudgetExceeded(s) => write!(f, "completion budget exceeded: {s}"),
            Error::UnorientablePair(s) => write!(f, "cannot orient derived relation: {s}"),
            Error::MissingEntry(s) => write!(f, "missing table entry: {s}"),
            Error::UnknownEntry(s) => write!(f, "unknown catalog entry `{s}`"),
            Error::UnknownGenerator { name, column } => {
                write!(f, "unknown generator `{name}` at column {column}")
            }
            Error::Syntax { message, column } => write!(f, "syntax error at column {column}: {message}"),
            Error::CrossedModuleViolation(s) => write!(f, "crossed-module condition fails: {s}"),
            Error::Unsolvable(s) => write!(f, "linear system unsolvable: {s}"),
            Error::Invalid(s) => write!(f, "{s}"),
            Error::VerificationFailed(s) => write!(f, "verification failed: {s}"),
            Error::Located { line, column, source } => match &**source {
                Error::Syntax { message, .. } => write!(f, "line {line}, column {column}: syntax error: {message}"),
                Error::UnknownGenerator { name, .. } => {
                    write!(f, "line {line}, column {column}: unknown generator `{name}`")
                }
                e => write!(f, "line {line}: {e}"),
            },
        }
    }
}
