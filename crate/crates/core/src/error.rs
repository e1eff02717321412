//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("degenerate PDF: grid values are identically zero")]
    DegeneratePdf,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("no scattering: the only conservation root has identical velocities")]
    NoScattering,
    #[error("undefined ratio: incident speed v = 0")]
    UndefinedRatio,
    #[error("root finder did not converge: residuals {residuals:?}")]
    RootFindFailed { residuals: [f64; 3] },
    #[error("internal consistency: assembled density {value:e} is negative beyond tolerance")]
    NegativeDensity { value: f64 },
    #[error("resolution violation: {0}")]
    ResolutionViolation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
