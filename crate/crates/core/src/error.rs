use thiserror::Error;

/// Reasons a scenario is rejected before any planning happens.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("wind speed {speed} must be strictly below the vehicle speed (1)")]
    WindTooStrong { speed: f64 },
    #[error("turn radius must be positive, got {0}")]
    NonPositiveRho(f64),
    #[error("tolerance `{0}` must be positive and finite")]
    NonPositiveTolerance(&'static str),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}
