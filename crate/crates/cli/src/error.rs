use std::fmt;

use czf_core::construct::ConstructError;
use czf_core::family::FamilyError;
use czf_core::oracle::OracleError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or a request the chosen method cannot serve.
    Usage(String),
    /// Unreadable or malformed input.
    Input(String),
    /// A certificate failed to replay or a proven bound was violated.
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> CliError {
        match e {
            FamilyError::Internal(_) => CliError::Internal(e.to_string()),
            FamilyError::Graph(_) | FamilyError::PreoccupiedOutOfRange(_) => CliError::Input(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> CliError {
        CliError::Usage(e.to_string())
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> CliError {
        match e {
            ConstructError::StepTooLarge { .. } | ConstructError::ChainMismatch { .. } | ConstructError::Internal(_) => {
                CliError::Internal(e.to_string())
            }
            ConstructError::Graph(_) | ConstructError::InvalidCover(_) => CliError::Input(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
