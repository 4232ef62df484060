//! One error type for the whole CLI, sorted into the three failure classes
//! the exit-code contract distinguishes: usage (1), group validation (2), and
//! resource limits or unverifiable comparisons (3).

use gengame_core::{GroupError, LatticeError, OracleError, StructureError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The invocation itself is wrong: bad spec syntax, bad flag values.
    #[error("{0}")]
    Usage(String),
    /// The group (or a file describing it) failed validation.
    #[error("{0}")]
    Validation(String),
    /// A guard refused the work: state cap, subgroup blowup.
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::SubgroupBlowup { .. } => CliError::Resource(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::StateCapExceeded { .. } => CliError::Resource(e.to_string()),
            OracleError::Lattice(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Lattice(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}
