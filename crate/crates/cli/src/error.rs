//! Error taxonomy of the command line front end.
//!
//! Exit status contract: 0 on success, 2 for configuration errors, 3 for
//! numeric non-convergence, 4 for IO failures. Every error prints exactly
//! one machine-parsable JSON line on the diagnostic stream.

use std::fmt;

use superfringe_core::binning::SchemeError;
use superfringe_core::mcsim::McError;
use superfringe_core::numerics::NumericsError;
use superfringe_core::quadmodel::DomainError;

#[derive(Debug)]
pub enum CliError {
    /// Invalid or inconsistent run configuration.
    Config(String),
    /// A numeric procedure did not converge or left its domain.
    Numeric(String),
    /// Reading or writing a dataset failed.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric(_) => 3,
            Self::Io(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::Numeric(_) => "numeric",
            Self::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Self::Config(m) | Self::Numeric(m) | Self::Io(m) => m,
        }
    }

    /// One-line machine-parsable rendering for stderr.
    pub fn diagnostic_line(&self) -> String {
        serde_json::json!({ "error": { "kind": self.kind(), "message": self.message() } }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        Self::Config(e.to_string())
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::InvalidHalfWidth(_)
            | SchemeError::InvalidSpacing { .. }
            | SchemeError::InvalidBinCount(_)
            | SchemeError::InvalidPhotonNumber(_)
            | SchemeError::InvalidThreshold(_) => Self::Config(e.to_string()),
            SchemeError::BelowThreshold(_)
            | SchemeError::FlatResponse
            | SchemeError::NoFringes
            | SchemeError::OutOfDomain(_)
            | SchemeError::Numerics(_) => Self::Numeric(e.to_string()),
        }
    }
}

impl From<McError> for CliError {
    fn from(e: McError) -> Self {
        Self::Config(e.to_string())
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::NonConvergence { .. } | NumericsError::DegenerateCurve => Self::Numeric(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
