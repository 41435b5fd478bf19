use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function has a pole at {0}")]
    GammaPole(f64),

    #[error("argument must be positive and finite, got {0}")]
    NonPositiveArgument(f64),

    #[error("argument {0} is below the smallest supported value 1e-100")]
    ArgumentTooSmall(f64),

    #[error("order {0} is outside the supported range |nu| <= 2000")]
    OrderOutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("angle {0} is outside (-pi, pi]")]
    AngleOutOfDomain(f64),

    #[error("amplitude is singular in the forward direction (theta = 0) for non-integer flux")]
    ForwardSingularity,

    #[error("partial-wave sum did not reach tolerance {tol:e} before the order cap {cap}")]
    TruncationFailure { tol: f64, cap: usize },

    #[error("radius {r} lies inside the cylinder of radius {a}")]
    InsideCylinder { r: f64, a: f64 },

    #[error("finite-difference step h = {h} is too large (h*k must not exceed 0.1)")]
    StepTooLarge { h: f64 },

    #[error("quadrature with {n} nodes is unresolved: refinement changed the result by {change:e}")]
    QuadratureUnresolved { n: usize, change: f64 },

    #[error("flux {0} is an integer; the channel split at m + alpha = 0 is undefined")]
    IntegerFlux(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
