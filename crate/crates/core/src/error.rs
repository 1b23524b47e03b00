use std::path::PathBuf;

use thiserror::Error;

use crate::scenario::ScenarioError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown branch `{0}` (expected cubic-bright, cubic-dark, cq-bright or cq-dark)")]
    UnknownBranch(String),

    #[error("profile couplings (mu={profile_mu}, G3={profile_g3}, G5={profile_g5}) do not match the map (mu={map_mu}, G3={map_g3}, G5={map_g5})")]
    CouplingMismatch {
        profile_mu: f64,
        profile_g3: f64,
        profile_g5: f64,
        map_mu: f64,
        map_g3: f64,
        map_g5: f64,
    },

    #[error("nonlinearity order {order} is outside 1..={available}")]
    OrderOutOfRange { order: usize, available: usize },

    #[error("grid mismatch: expected {expected} samples, found {found}")]
    GridMismatch { expected: usize, found: usize },

    #[error("field became non-finite at step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },

    #[error("invalid figure id {0} (expected 1..=7)")]
    InvalidFigure(u32),

    #[error(transparent)]
    Scenario(#[from] ScenarioError),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
