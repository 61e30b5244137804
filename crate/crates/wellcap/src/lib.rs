//! File formats, reports and command pipelines behind the `wellcap` binary.

pub mod commands;
pub mod problem;
pub mod report;

use thiserror::Error;
use wellcap_core::filtration::FiltrationError;
use wellcap_core::obstruction::ObstructionError;
use wellcap_core::perturbation::PerturbationError;
use wellcap_core::welldiagram::WellDiagramError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("the l2 norm is not supported: its level sets are not piecewise linear")]
    UnsupportedNorm,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("perturbation precondition violated: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::UnsupportedNorm => 3,
            CliError::Internal(_) => 4,
            CliError::Precondition(_) => 6,
        }
    }
}

/// Exit code of `verify` when a certified sample violates containment.
pub const EXIT_VIOLATION: u8 = 5;

impl From<FiltrationError> for CliError {
    fn from(e: FiltrationError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<WellDiagramError> for CliError {
    fn from(e: WellDiagramError) -> Self {
        match e {
            WellDiagramError::Filtration(f) => f.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<PerturbationError> for CliError {
    fn from(e: PerturbationError) -> Self {
        match e {
            PerturbationError::Obstruction(o) => o.into(),
            PerturbationError::Inconsistent(msg) => CliError::Internal(msg),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        assert_eq!(CliError::from(FiltrationError::EmptySchedule).exit_code(), 2);
        assert_eq!(CliError::UnsupportedNorm.exit_code(), 3);
        let internal = ObstructionError::NoAdmissibleTestPoint { tried: 64 };
        assert_eq!(CliError::from(internal).exit_code(), 4);
        assert_eq!(CliError::from(PerturbationError::Inconsistent("x".into())).exit_code(), 4);
        assert_eq!(CliError::from(PerturbationError::NoCollar).exit_code(), 6);
        assert_eq!(EXIT_VIOLATION, 5);
    }
}
