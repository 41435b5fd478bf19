//! Scattering of a charged particle by an impenetrable cylinder that encloses
//! a magnetic flux line (the finite-radius Aharonov-Bohm problem).
//!
//! * [`specfun`]: Γ and real-order Bessel/Hankel functions.
//! * [`partialwave`]: amplitude and cross sections for radius `a > 0`.
//! * [`fluxline`]: the zero-radius closed forms and the small-radius limit.
//! * [`wavefield`]: the exterior wavefunction, vector potential and current.
//! * [`verify`]: the numerical self-checks shared by the CLI and the tests.

pub mod error;
pub mod fluxline;
pub mod partialwave;
pub mod quadrature;
pub mod specfun;
pub mod summation;
pub mod verify;
pub mod wavefield;

pub use error::{Error, Result};
pub use fluxline::FluxLineConfig;
pub use num_complex::Complex64;
pub use partialwave::{AmplitudeSeries, PartialWaves, ScatteringConfig, TruncationPolicy};
pub use specfun::BesselPair;
pub use wavefield::{FieldGrid, GridSpec, PlanarVector};

/// Default absolute tolerance on the partial-wave sums.
pub const DEFAULT_TOL: f64 = 1e-12;
