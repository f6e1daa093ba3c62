use thiserror::Error;

/// Errors raised by the library. Each variant names the check that failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} = {value} is outside [0, 1]")]
    RateOutOfRange { field: &'static str, value: f64 },

    #[error("side {side}: t^2 + r^2 = {sum} exceeds 1")]
    AbsorptionViolation { side: char, sum: f64 },

    #[error("invalid parameter {field} = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("negative time t = {0}; mirror superpositions only hold forward in time")]
    NegativeTime(f64),

    #[error(
        "quadrature grid too coarse: Richardson deviation {deviation:e} exceeds {tolerance:e}"
    )]
    GridTooCoarse { deviation: f64, tolerance: f64 },

    #[error("mode grid does not cover packet band [{k_lo}, {k_hi}] (grid spans [{dk}, {k_max}])")]
    BandwidthNotCovered {
        k_lo: f64,
        k_hi: f64,
        dk: f64,
        k_max: f64,
    },

    #[error("degenerate normalisation: {0}")]
    DegenerateNormalisation(&'static str),

    #[error("atom-mirror distance must be positive, got z = {0}")]
    ZeroDistance(f64),

    #[error("quadrature not converged at order {order}: change {change:e} exceeds {tolerance:e}")]
    QuadratureNotConverged {
        order: usize,
        change: f64,
        tolerance: f64,
    },

    #[error("time step {dt} exceeds the stability limit {limit}")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("density matrix invariant broken at step {step}: {what} = {value:e}")]
    InvariantViolated {
        step: usize,
        what: &'static str,
        value: f64,
    },

    #[error("packet on side {side} is centred at x0 = {x0}, outside its half-space")]
    SideMismatch { side: char, x0: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
