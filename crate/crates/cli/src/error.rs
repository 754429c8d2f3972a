use std::path::PathBuf;

use plankforge_core::bounds::BoundError;
use plankforge_core::extremal::ExtremalError;
use plankforge_core::plank::PlankError;
use plankforge_core::poly::PolyError;
use plankforge_core::remez::RemezError;
use plankforge_core::space::SpaceError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Remez(#[from] RemezError),
    #[error(transparent)]
    Plank(#[from] PlankError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Plank(PlankError::Gate { .. } | PlankError::Allocation(_) | PlankError::Rational(_)) => {
                EXIT_INFEASIBLE
            }
            _ => EXIT_USAGE,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
