use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed instance text. `line` is 1-based.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    /// Well-formed input that violates an instance invariant.
    #[error("invalid instance: {0}")]
    Semantic(String),

    #[error("cut index {index} out of range for {machines} machines (max {max})")]
    CutIndexOutOfRange { index: u64, machines: usize, max: u64 },

    /// A size guard rejected the request (enumeration blow-up, bit-width limits).
    #[error("{what} supports at most {limit} machines, instance has {machines}")]
    TooManyMachines {
        what: &'static str,
        limit: usize,
        machines: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Could not fill the initial population with distinct individuals.
    #[error("could not draw {wanted} distinct individuals (got {got} after {attempts} attempts)")]
    PopulationExhausted {
        wanted: usize,
        got: usize,
        attempts: usize,
    },

    /// A fitness precondition failed; this indicates a bug upstream.
    #[error("inconsistent fitness inputs: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
