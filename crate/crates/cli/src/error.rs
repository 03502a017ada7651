//! Error categories and their exit codes: 1 for domain errors, 2 for usage.

use ahder::ahstructure::{AhError, ContextBuildError};
use ahder::coeffpoly::ParseError;
use ahder::derivations::{DerivationError, DerivationTextError};
use ahder::hochschild::HochschildError;
use ahder::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error in {what}: {err}")]
    Parse { what: String, err: ParseError },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Ah(#[from] AhError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0} check(s) failed")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Input(_) => 2,
            _ => 1,
        }
    }

    /// Short category printed with domain errors.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) | CliError::Input(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Ah(AhError::BadFactors(_)) => "factors",
            CliError::Ah(_) => "algebra",
            CliError::Derivation(DerivationError::Criterion { .. } | DerivationError::NotInAh { .. }) => {
                "invalid-derivation"
            }
            CliError::Derivation(DerivationError::NotInNormalizer(_)) => "normalizer",
            CliError::Derivation(_) => "derivation",
            CliError::Hochschild(_) => "hochschild",
            CliError::Poly(_) => "polynomial",
            CliError::VerifyFailed(_) => "verify",
        }
    }
}

impl From<ContextBuildError> for CliError {
    fn from(e: ContextBuildError) -> Self {
        match e {
            ContextBuildError::Parse(err) => CliError::Parse { what: "h".into(), err },
            ContextBuildError::Poly(PolyError::BadCharacteristic(c)) => {
                CliError::Usage(format!("--char must be 0 or a prime, got {c}"))
            }
            ContextBuildError::Poly(e) => CliError::Poly(e),
            ContextBuildError::Ah(e) => CliError::Ah(e),
        }
    }
}

impl From<DerivationTextError> for CliError {
    fn from(e: DerivationTextError) -> Self {
        match e {
            DerivationTextError::Parse(err) => CliError::Parse {
                what: "derivation".into(),
                err,
            },
            DerivationTextError::Derivation(e) => CliError::Derivation(e),
        }
    }
}
