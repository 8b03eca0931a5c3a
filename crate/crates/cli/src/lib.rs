//! Command-line surface for the exact group-degree library: a parametric
//! group catalog, JSON degree reports, a verification mode that
//! machine-checks every bound and oracle, and closed-form tables for the
//! dihedral and quaternion families.

pub mod catalog;
pub mod report;
pub mod table;
pub mod verify;

use std::fmt;

/// CLI-level failures, split by exit code: bad input exits 2, resource
/// limits exit 3. Violated bounds are not errors; `verify` reports them
/// and exits 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Resource(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Resource(msg) => write!(f, "resource limit: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<wedgedeg_core::Error> for CliError {
    fn from(e: wedgedeg_core::Error) -> Self {
        use wedgedeg_core::Error::*;
        match e {
            LimitExceeded(_) | GroupTooLarge { .. } | SizeLimitExceeded(_) | TooLarge { .. } => {
                CliError::Resource(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}
