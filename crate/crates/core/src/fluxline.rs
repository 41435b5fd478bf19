//! The zero-radius (Aharonov-Bohm) flux line.

use crate::error::{Error, Result};
use crate::partialwave::{
    check_angle, split_flux, PartialWaves, ScatteringConfig, TruncationPolicy, MAX_SIZE_PARAMETER,
};
use crate::specfun::{cis_pi, jy_scaled, sin_cos_pi, sin_pi};
use crate::summation::{interleaved, ComplexSum};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A flux line of strength α probed at wavenumber k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxLineConfig {
    pub k: f64,
    pub alpha: f64,
}

impl FluxLineConfig {
    pub fn new(k: f64, alpha: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParameter(format!("k must be positive, got {k}")));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite, got {alpha}"
            )));
        }
        Ok(Self { k, alpha })
    }

    pub fn alpha_int(&self) -> f64 {
        split_flux(self.alpha).0
    }

    pub fn alpha_frac(&self) -> f64 {
        split_flux(self.alpha).1
    }
}

fn check_nonforward(theta: f64) -> Result<()> {
    check_angle(theta)?;
    if theta == 0.0 {
        return Err(Error::ForwardSingularity);
    }
    Ok(())
}

/// f = sin(πα) e^{iπα} e^{−i([α]+½)θ} / (√(2πik) sin(θ/2)), √i = e^{iπ/4}.
pub fn ab_amplitude(cfg: &FluxLineConfig, theta: f64) -> Result<Complex64> {
    check_nonforward(theta)?;
    let (s, c) = sin_cos_pi(cfg.alpha);
    let phase =
        Complex64::new(c, s) * Complex64::from_polar(1.0, -(cfg.alpha_int() + 0.5) * theta - 0.25 * PI);
    Ok(s * phase / ((2.0 * PI * cfg.k).sqrt() * (0.5 * theta).sin()))
}

/// sin²(πα) / (2πk sin²(θ/2)).
pub fn ab_differential_cross_section(cfg: &FluxLineConfig, theta: f64) -> Result<f64> {
    check_nonforward(theta)?;
    let s = sin_pi(cfg.alpha);
    let h = (0.5 * theta).sin();
    Ok(s * s / (2.0 * PI * cfg.k * h * h))
}

/// c_m = e^{iπ(m+α)} e^{−iπ|m+α|/2}.
pub fn fluxline_coefficients(alpha: f64, m: i64) -> Complex64 {
    let o = m as f64 + alpha;
    cis_pi(o) * cis_pi(-0.5 * o.abs())
}

/// u(r, θ) = Σ c_m e^{imθ} J_{|m+α|}(kr).
pub fn fluxline_wavefunction(cfg: &FluxLineConfig, r: f64, theta: f64, tol: f64) -> Result<Complex64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::NonPositiveArgument(r));
    }
    check_angle(theta)?;
    let x = cfg.k * r;
    if x > MAX_SIZE_PARAMETER {
        return Err(Error::InvalidParameter(format!("kr = {x} exceeds 1000")));
    }
    let alpha = cfg.alpha;
    let j = |m: i64| -> Result<f64> { Ok(jy_scaled((m as f64 + alpha).abs(), x)?.j.to_f64()) };
    let t = TruncationPolicy::new(tol)?.resolve(x, alpha, |m| Ok(j(m)?.abs()))?;
    let mut sum = ComplexSum::new();
    for m in interleaved(t.lo, t.hi) {
        let jm = j(m)?;
        if jm != 0.0 {
            sum.add(fluxline_coefficients(alpha, m) * Complex64::from_polar(jm, m as f64 * theta));
        }
    }
    Ok(sum.value())
}

/// sin((α+n)π)/((α+n)π), equal to 1 at α + n = 0.
pub fn fourier_phase_coeff(alpha: f64, n: i64) -> f64 {
    let z = alpha + n as f64;
    if z == 0.0 {
        return 1.0;
    }
    sin_pi(z) / (PI * z)
}

/// Finite-radius amplitude near a = 0 next to the flux-line result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallRadiusLimit {
    pub f_finite: Complex64,
    pub f_ab: Complex64,
    /// Channels with m + α > 0.
    pub pos_part: Complex64,
    /// Channels with m + α < 0.
    pub neg_part: Complex64,
}

/// Evaluates the finite-radius amplitude for 0 < ka ≤ 0.1 split at
/// m + α = 0, together with [`ab_amplitude`]. The positive half vanishes
/// like (ka)^{2 min(ν, 1−ν)} and the total tends to the flux-line value.
pub fn small_radius_limit_check(
    k: f64,
    a: f64,
    alpha: f64,
    theta: f64,
    tol: f64,
) -> Result<SmallRadiusLimit> {
    let cfg = ScatteringConfig::new(k, a, alpha)?;
    let ka = cfg.ka();
    if !(ka > 0.0 && ka <= 0.1) {
        return Err(Error::InvalidParameter(format!("ka = {ka} outside (0, 0.1]")));
    }
    if cfg.integer_flux() {
        return Err(Error::IntegerFlux(alpha));
    }
    check_nonforward(theta)?;
    let waves = PartialWaves::new(cfg, tol)?;
    let (pos_part, neg_part) = waves.split_amplitude(theta)?;
    Ok(SmallRadiusLimit {
        f_finite: pos_part + neg_part,
        f_ab: ab_amplitude(&FluxLineConfig::new(k, alpha)?, theta)?,
        pos_part,
        neg_part,
    })
}
