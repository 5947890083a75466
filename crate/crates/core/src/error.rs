use thiserror::Error;

/// Errors produced by the spectrum, expansion and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite argument: {0}")]
    NonFinite(f64),

    #[error("invalid index {0}: levels are numbered from 1")]
    InvalidIndex(usize),

    #[error("no bound states for delta = {delta} (requires {requirement})")]
    NoBoundState { delta: f64, requirement: &'static str },

    #[error("delta = {delta} outside the supported range |delta| <= {limit}")]
    DeltaOutOfRange { delta: f64, limit: f64 },

    #[error("root bracket [{lo}, {hi}] does not contain a sign change")]
    NoBracket { lo: f64, hi: f64 },

    #[error("root refinement did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("zero residual {residual:e} exceeds tolerance {tolerance:e} for index {n}")]
    ResidualTooLarge { n: usize, residual: f64, tolerance: f64 },

    #[error("no closed-form cross-shift identity for moment {0}")]
    UnsupportedIdentity(u32),

    #[error("cross-shift identity ill-conditioned: |beta1 - beta2| = {0:e}")]
    IllConditioned(f64),

    #[error("diagonal element requested from an off-diagonal formula (n = k = {0})")]
    DiagonalElement(usize),

    #[error("expansion order {requested} exceeds engine limit {limit}")]
    OrderTooHigh { requested: usize, limit: usize },

    #[error("expansion coefficient at order {0} does not depend on the unknown")]
    InconsistentSystem(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: estimated error {estimate:e} > tolerance {tolerance:e}")]
    QuadratureDiverged { estimate: f64, tolerance: f64 },

    #[error("grid too narrow: boundary mass {0:e}")]
    GridTooNarrow(f64),

    #[error("grid too narrow: turning point only {0:.3} rho from the boundary")]
    TurningPointTooClose(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
