//! Fixed workloads shared by the benchmarks.

use abflux_core::{GridSpec, ScatteringConfig};

/// Size parameters from the Rayleigh regime to deep geometric optics.
pub fn configs() -> Vec<(&'static str, ScatteringConfig)> {
    [("ka=0.1", 0.1), ("ka=1", 1.0), ("ka=10", 10.0), ("ka=100", 100.0)]
        .into_iter()
        .map(|(name, a)| (name, ScatteringConfig::new(1.0, a, 0.3).expect("valid fixture")))
        .collect()
}

/// A 32 x 64 grid from the surface out to four radii.
pub fn grid(cfg: &ScatteringConfig) -> GridSpec {
    GridSpec {
        r_min: cfg.a,
        r_max: 4.0 * cfg.a,
        n_r: 32,
        n_theta: 64,
    }
}
