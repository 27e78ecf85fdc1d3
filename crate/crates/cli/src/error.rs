//! CLI error type with a stable exit-code mapping.

use std::fmt;
use std::path::PathBuf;

use transport_hessian::Error as LibError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config { path: PathBuf, message: String },
    FileNotFound(PathBuf),
    Parse { path: PathBuf, message: String },
    Io(String),
    Lib(LibError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Config { path, message } => {
                write!(f, "config {}: {message}", path.display())
            }
            CliError::FileNotFound(path) => write!(f, "file not found: {}", path.display()),
            CliError::Parse { path, message } => {
                write!(f, "parse error in {}: {message}", path.display())
            }
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    /// One distinct nonzero exit code per error class.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Config { .. } => 3,
            CliError::FileNotFound(_) => 10,
            CliError::Parse { .. } => 11,
            CliError::Io(_) => 12,
            CliError::Lib(e) => match e {
                LibError::TooFewNodes { .. } => 20,
                LibError::NonPositiveDensity { .. } => 21,
                LibError::NotNormalizable { .. } => 22,
                LibError::TooFewSamples { .. } => 23,
                LibError::DegenerateSamples => 24,
                LibError::NonFiniteSample { .. } => 25,
                LibError::TooFewQuantiles { .. } => 26,
                LibError::InvalidGamma { .. } => 27,
                LibError::NonConvex { .. } => 28,
                LibError::DomainError { .. } => 29,
                LibError::QuadratureDivergence => 30,
                LibError::HInversionOutOfRange { .. } => 31,
                LibError::NotMeanZero { .. } => 32,
                LibError::PerturbedDensityInvalid { .. } => 33,
                LibError::GridMismatch { .. } => 34,
                LibError::MissingEntropyFunction => 35,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
