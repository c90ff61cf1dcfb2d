//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical constant or parameter failed validation.
    #[error("invalid input: {field} must be {requirement} (got {value:e})")]
    InvalidInput {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    /// Evaluation point too close to the coordinate origin.
    #[error("singular point: r = {r:e} is below the guard radius {r_min:e}")]
    Singularity { r: f64, r_min: f64 },

    /// Angular derivatives divide by sin(theta); points near the polar axis
    /// are rejected instead of returning garbage.
    #[error("pole proximity: theta = {theta:e} rad is within {margin:e} of the polar axis")]
    PoleProximity { theta: f64, margin: f64 },

    #[error("quadrature did not converge: refinement delta {delta:e} exceeds tol {tol:e}")]
    QuadratureNonConvergent { delta: f64, tol: f64 },

    #[error("complex event inconsistent with map parameters: Im(s) = {found:e}, expected {expected:e}")]
    InconsistentEvent { found: f64, expected: f64 },

    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),

    #[error("finite-difference step {h:e} is below the safe floor {floor:e}")]
    StepUnderflow { h: f64, floor: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    /// More than 10% of a sample cloud was rejected by point guards.
    #[error("sample cloud rejected {skipped} of {requested} points")]
    CloudCoverage { skipped: usize, requested: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
