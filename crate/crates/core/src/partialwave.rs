//! Scattering amplitude and cross sections for a cylinder of radius a > 0
//! enclosing flux α.
//!
//! The channel terms are T_m = 2J_{m+α}(ka)/H⁽¹⁾_{m+α}(ka). For m + α ≥ 0
//! they vanish super-exponentially as m grows, but for m + α < 0 they tend
//! to the constant t∞ = 1 − e^{2iπα}, so for non-integer α the series
//! Σ e^{imθ} T_m only exists as an Abel (ε → 0) limit. Writing
//! T_m = t∞ + R_m on the negative side, the constant part sums in closed
//! form,
//!
//! ```text
//! Σ_{m+α<0} e^{imθ} = e^{−i([α]+½)θ} / (2i sin(θ/2)),
//! ```
//!
//! and R_m = e^{2iπα}·2J_{|m+α|}/H⁽¹⁾_{|m+α|} decays like the positive side.
//! The closed-form piece is exactly the zero-radius amplitude, so
//! f = f_AB + f_reg with an absolutely convergent f_reg.
//!
//! Consequences: f is singular at θ = 0 and the total cross section is
//! infinite unless α is an integer. Both are reported as such rather than
//! as truncation artefacts.

use crate::error::{Error, Result};
use crate::specfun::{jy_scaled, sin_cos_pi};
use crate::summation::{interleaved, ComplexSum, NeumaierSum};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest size parameter ka (or kr) accepted by the series evaluators.
pub const MAX_SIZE_PARAMETER: f64 = 1000.0;
/// Default hard cap on |m + α| for truncation.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// One scattering problem: wavenumber k, radius a and flux α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringConfig {
    pub k: f64,
    pub a: f64,
    pub alpha: f64,
}

impl ScatteringConfig {
    pub fn new(k: f64, a: f64, alpha: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParameter(format!("k must be positive, got {k}")));
        }
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "a must be non-negative, got {a}"
            )));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite, got {alpha}"
            )));
        }
        Ok(Self { k, a, alpha })
    }

    pub fn ka(&self) -> f64 {
        self.k * self.a
    }

    /// [α], the integer part of the flux.
    pub fn alpha_int(&self) -> f64 {
        split_flux(self.alpha).0
    }

    /// ν = α − [α] ∈ [0, 1).
    pub fn alpha_frac(&self) -> f64 {
        split_flux(self.alpha).1
    }

    pub fn integer_flux(&self) -> bool {
        self.alpha == self.alpha.round()
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self { alpha, ..*self }
    }
}

/// ([α], ν). A negative α within half an ulp of an integer would give
/// ν = 1.0 after rounding; that case is folded back to ν = 0.
pub(crate) fn split_flux(alpha: f64) -> (f64, f64) {
    let n = alpha.floor();
    let nu = alpha - n;
    if nu >= 1.0 {
        (n + 1.0, 0.0)
    } else {
        (n, nu)
    }
}

/// 1 − e^{2iπα} = −2i sin(πα) e^{iπα}; exactly zero for integer α.
pub(crate) fn flux_constant(alpha: f64) -> Complex64 {
    let (s, c) = sin_cos_pi(alpha);
    Complex64::new(2.0 * s * s, -2.0 * s * c)
}

/// e^{2iπα}.
pub(crate) fn flux_phase2(alpha: f64) -> Complex64 {
    let (s, c) = sin_cos_pi(alpha);
    Complex64::new(c * c - s * s, 2.0 * s * c)
}

/// 2J_β(x)/H⁽¹⁾_β(x) for β ≥ 0, as 2ρ/(ρ + i) with ρ = J/Y.
pub(crate) fn reflection_term(beta: f64, x: f64) -> Result<Complex64> {
    let rho = jy_scaled(beta, x)?.ratio();
    if !rho.is_finite() {
        return Ok(Complex64::new(2.0, 0.0));
    }
    Ok(2.0 * rho / Complex64::new(rho, 1.0))
}

fn reflection_magnitude(beta: f64, x: f64) -> Result<f64> {
    let rho = jy_scaled(beta, x)?.ratio();
    if !rho.is_finite() {
        return Ok(2.0);
    }
    Ok(2.0 * rho.abs() / rho.hypot(1.0))
}

fn ceil_i64(x: f64) -> i64 {
    x.ceil() as i64
}

/// Baseline cutoff ⌈x + 8x^{1/3} + 12⌉.
pub fn baseline_order(x: f64) -> usize {
    (x + 8.0 * x.cbrt() + 12.0).ceil() as usize
}

/// Tail tolerance and order cap for a partial-wave sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Absolute bound on the discarded part of the dimensionless sum.
    pub tol: f64,
    /// No order |m + α| beyond this is ever evaluated.
    pub m_max_cap: usize,
}

impl TruncationPolicy {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tol must be positive, got {tol}"
            )));
        }
        Ok(Self {
            tol,
            m_max_cap: DEFAULT_ORDER_CAP,
        })
    }

    /// Finds the window m ∈ [−M−⌈|α|⌉, M+⌈|α|⌉] for argument x, judging the
    /// tail with the given term magnitude |t(m)|.
    ///
    /// M runs through M₀, M₀+8, … with M₀ = ⌈x + 8x^{1/3} + 12⌉. It is
    /// accepted once, at both window edges, |t_edge| < (tol/2)(1 − ρ) with
    /// ρ = |t_edge|/|t_inner| the ratio of the last two terms, so that a
    /// geometric majorant of each discarded tail is below tol/2.
    pub fn resolve(
        &self,
        x: f64,
        alpha: f64,
        mut term_mag: impl FnMut(i64) -> Result<f64>,
    ) -> Result<Truncation> {
        let c = ceil_i64(alpha.abs());
        let mut m = baseline_order(x) as i64;
        loop {
            let lo = -m - c;
            let hi = m + c;
            let reach = ((lo as f64 + alpha).abs()).max((hi as f64 + alpha).abs());
            if reach > self.m_max_cap as f64 {
                return Err(Error::TruncationFailure {
                    tol: self.tol,
                    cap: self.m_max_cap,
                });
            }
            let mut tail = 0.0;
            let mut ok = true;
            for (edge, inner) in [(hi, hi - 1), (lo, lo + 1)] {
                let te = term_mag(edge)?;
                let ti = term_mag(inner)?;
                let rho = if ti > 0.0 { te / ti } else { 0.0 };
                if te == 0.0 {
                    continue;
                }
                if !(rho < 1.0) || te >= 0.5 * self.tol * (1.0 - rho) {
                    ok = false;
                    break;
                }
                tail += te * rho / (1.0 - rho);
            }
            if ok {
                return Ok(Truncation {
                    m: m as usize,
                    lo,
                    hi,
                    tail_bound: tail,
                });
            }
            m += 8;
        }
    }
}

/// Outcome of a truncation search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// The symmetric cutoff M.
    pub m: usize,
    /// Lowest retained m, −M − ⌈|α|⌉.
    pub lo: i64,
    /// Highest retained m, M + ⌈|α|⌉.
    pub hi: i64,
    /// Geometric bound on the discarded terms.
    pub tail_bound: f64,
}

/// Magnitude of the regular amplitude term at index m.
fn amplitude_term_mag(x: f64, alpha: f64, m: i64) -> Result<f64> {
    reflection_magnitude((m as f64 + alpha).abs(), x)
}

/// Truncation order M for the amplitude sum at size parameter x.
pub fn truncation_order(x: f64, alpha: f64, tol: f64) -> Result<usize> {
    let policy = TruncationPolicy::new(tol)?;
    if !(x >= 0.0) || !x.is_finite() || x > MAX_SIZE_PARAMETER {
        return Err(Error::InvalidParameter(format!(
            "size parameter {x} outside [0, 1000]"
        )));
    }
    if x == 0.0 {
        return Ok(baseline_order(0.0));
    }
    Ok(policy.resolve(x, alpha, |m| amplitude_term_mag(x, alpha, m))?.m)
}

/// Terms of the amplitude series at one angle.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSeries {
    /// (m, e^{imθ}·t_m) in summation order 0, −1, +1, …; t_m is T_m for
    /// m + α ≥ 0 and T_m − t∞ below.
    pub terms: Vec<(i64, Complex64)>,
    /// Compensated sum of `terms` in stored order.
    pub partial_sum: Complex64,
    /// t∞·Σ_{m+α<0} e^{imθ} in closed form (zero for integer α).
    pub flux_part: Complex64,
    pub tail_bound: f64,
}

impl AmplitudeSeries {
    /// The amplitude −(flux_part + partial_sum)/√(2πik).
    pub fn amplitude(&self, k: f64) -> Complex64 {
        prefactor(k) * (self.flux_part + self.partial_sum)
    }
}

/// −1/√(2πik) with √i = e^{iπ/4}.
pub(crate) fn prefactor(k: f64) -> Complex64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    -Complex64::new(s, -s) / (2.0 * PI * k).sqrt()
}

pub(crate) fn check_angle(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta <= -PI || theta > PI {
        return Err(Error::AngleOutOfDomain(theta));
    }
    Ok(())
}

/// Σ_{m+α<0} e^{imθ} as an Abel limit: e^{−i([α]+½)θ}/(2i sin(θ/2)).
pub(crate) fn negative_channel_sum(alpha: f64, theta: f64) -> Complex64 {
    let n = alpha.floor();
    let phase = Complex64::from_polar(1.0, -(n + 0.5) * theta);
    phase / Complex64::new(0.0, 2.0 * (0.5 * theta).sin())
}

fn check_finite_radius(cfg: &ScatteringConfig) -> Result<()> {
    if cfg.a == 0.0 {
        return Err(Error::InvalidParameter(
            "a = 0 is the flux-line limit; use the fluxline module".into(),
        ));
    }
    if cfg.ka() > MAX_SIZE_PARAMETER {
        return Err(Error::InvalidParameter(format!("ka = {} exceeds 1000", cfg.ka())));
    }
    Ok(())
}

/// The θ-independent channel data of one configuration.
#[derive(Debug, Clone)]
pub struct PartialWaves {
    cfg: ScatteringConfig,
    truncation: Truncation,
    /// (m, t_m) in interleaved order
    terms: Vec<(i64, Complex64)>,
    flux_constant: Complex64,
}

impl PartialWaves {
    pub fn new(cfg: ScatteringConfig, tol: f64) -> Result<Self> {
        check_finite_radius(&cfg)?;
        let x = cfg.ka();
        let alpha = cfg.alpha;
        let truncation =
            TruncationPolicy::new(tol)?.resolve(x, alpha, |m| amplitude_term_mag(x, alpha, m))?;
        let e2 = flux_phase2(alpha);
        let terms = interleaved(truncation.lo, truncation.hi)
            .map(|m| {
                let order = m as f64 + alpha;
                let t = reflection_term(order.abs(), x)?;
                Ok((m, if order >= 0.0 { t } else { e2 * t }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cfg,
            truncation,
            terms,
            flux_constant: flux_constant(alpha),
        })
    }

    pub fn config(&self) -> &ScatteringConfig {
        &self.cfg
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    /// (m, t_m) in summation order.
    pub fn channel_terms(&self) -> &[(i64, Complex64)] {
        &self.terms
    }

    /// t∞ = 1 − e^{2iπα}.
    pub fn flux_constant(&self) -> Complex64 {
        self.flux_constant
    }

    pub fn series(&self, theta: f64) -> Result<AmplitudeSeries> {
        check_angle(theta)?;
        let singular = self.flux_constant != Complex64::new(0.0, 0.0);
        if singular && theta == 0.0 {
            return Err(Error::ForwardSingularity);
        }
        let mut sum = ComplexSum::new();
        let terms: Vec<(i64, Complex64)> = self
            .terms
            .iter()
            .map(|&(m, t)| {
                let z = t * Complex64::from_polar(1.0, m as f64 * theta);
                sum.add(z);
                (m, z)
            })
            .collect();
        let flux_part = if singular {
            self.flux_constant * negative_channel_sum(self.cfg.alpha, theta)
        } else {
            Complex64::new(0.0, 0.0)
        };
        Ok(AmplitudeSeries {
            terms,
            partial_sum: sum.value(),
            flux_part,
            tail_bound: self.truncation.tail_bound,
        })
    }

    pub fn amplitude(&self, theta: f64) -> Result<Complex64> {
        Ok(self.series(theta)?.amplitude(self.cfg.k))
    }

    /// The m + α > 0 and m + α < 0 halves of the amplitude. The second
    /// includes the closed-form flux part.
    pub fn split_amplitude(&self, theta: f64) -> Result<(Complex64, Complex64)> {
        let s = self.series(theta)?;
        let (mut pos, mut neg) = (ComplexSum::new(), ComplexSum::new());
        for &(m, z) in &s.terms {
            if m as f64 + self.cfg.alpha > 0.0 {
                pos.add(z);
            } else {
                neg.add(z);
            }
        }
        let p = prefactor(self.cfg.k);
        Ok((p * pos.value(), p * (s.flux_part + neg.value())))
    }

    /// (4/k) Σ J²/(J²+Y²); +∞ for non-integer flux.
    pub fn total_cross_section(&self) -> f64 {
        if !self.cfg.integer_flux() {
            return f64::INFINITY;
        }
        let mut s = NeumaierSum::new();
        for &(_, t) in &self.terms {
            s.add(0.25 * t.norm_sqr());
        }
        4.0 / self.cfg.k * s.value()
    }
}

/// f_k(α, θ) for a cylinder of radius a > 0.
///
/// Returns [`Error::ForwardSingularity`] at θ = 0 when α is not an integer.
pub fn solenoid_amplitude(cfg: &ScatteringConfig, theta: f64, tol: f64) -> Result<Complex64> {
    check_angle(theta)?;
    PartialWaves::new(*cfg, tol)?.amplitude(theta)
}

/// Amplitude of the flux-free hard cylinder,
/// −√(2/(πk)) Σ i^m (J_m/H_m) e^{i(mθ − φ_m)}, φ_m = (m + ½)π/2.
///
/// Deliberately shares nothing with [`solenoid_amplitude`] beyond the
/// public Bessel functions, so the two can be checked against each other.
pub fn hard_cylinder_amplitude(k: f64, a: f64, theta: f64) -> Result<Complex64> {
    let cfg = ScatteringConfig::new(k, a, 0.0)?;
    check_finite_radius(&cfg)?;
    if !theta.is_finite() {
        return Err(Error::AngleOutOfDomain(theta));
    }
    let x = cfg.ka();
    let ratio = |m: i64| -> Result<Complex64> {
        let p = crate::specfun::bessel_pair(m as f64, x)?;
        if p.j == 0.0 || p.y.is_infinite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(p.j / p.hankel1())
    };
    let mut n = baseline_order(x) as i64;
    while ratio(n)?.norm() > 1e-18 {
        n += 8;
        if n as usize > DEFAULT_ORDER_CAP {
            return Err(Error::TruncationFailure {
                tol: 1e-18,
                cap: DEFAULT_ORDER_CAP,
            });
        }
    }
    let mut sum = ComplexSum::new();
    for m in -n..=n {
        let mf = m as f64;
        let phase = crate::specfun::cis_pi(0.5 * mf)
            * crate::specfun::cis_pi(-0.5 * (mf + 0.5))
            * Complex64::from_polar(1.0, mf * theta);
        sum.add(phase * ratio(m)?);
    }
    Ok(-(2.0 / (PI * k)).sqrt() * sum.value())
}

/// δ_m with sin δ_m = |J_m|/√(J_m² + Y_m²), in [0, π/2].
pub fn phase_shift(m: i64, x: f64) -> Result<f64> {
    let rho = jy_scaled(m as f64, x)?.ratio();
    if !rho.is_finite() {
        return Ok(PI / 2.0);
    }
    Ok(rho.abs().atan())
}

/// σ = (4/k) Σ_m J²_{m+α}(ka)/(J²_{m+α}(ka) + Y²_{m+α}(ka)).
///
/// For non-integer α the channel contributions tend to (4/k) sin²(πα) as
/// m → −∞, so the sum diverges and +∞ is returned.
pub fn total_cross_section(cfg: &ScatteringConfig, tol: f64) -> Result<f64> {
    check_finite_radius(cfg)?;
    if !cfg.integer_flux() {
        return Ok(f64::INFINITY);
    }
    Ok(PartialWaves::new(*cfg, tol)?.total_cross_section())
}

/// (m, (4/k) J²_{m+α}/(J²_{m+α} + Y²_{m+α})) for m in lo..=hi.
pub fn channel_cross_sections(cfg: &ScatteringConfig, lo: i64, hi: i64) -> Result<Vec<(i64, f64)>> {
    check_finite_radius(cfg)?;
    (lo..=hi)
        .map(|m| {
            let rho = jy_scaled(m as f64 + cfg.alpha, cfg.ka())?.ratio();
            let s2 = if rho.is_finite() {
                rho * rho / (1.0 + rho * rho)
            } else {
                1.0
            };
            Ok((m, 4.0 / cfg.k * s2))
        })
        .collect()
}

/// |f_k(α, θ)|².
pub fn differential_cross_section(cfg: &ScatteringConfig, theta: f64, tol: f64) -> Result<f64> {
    Ok(solenoid_amplitude(cfg, theta, tol)?.norm_sqr())
}

/// Periodic trapezoid rule for ∫|f|² dθ on the nodes θ_j = −π + 2π(j+1)/n.
///
/// The same integral on every second node is compared as a refinement
/// check. For non-integer α the integrand has a non-integrable θ⁻²
/// singularity at θ = 0 and +∞ is returned.
pub fn cross_section_by_quadrature(cfg: &ScatteringConfig, n_nodes: usize, tol: f64) -> Result<f64> {
    check_finite_radius(cfg)?;
    if n_nodes < 64 {
        return Err(Error::InvalidParameter(format!("n_nodes = {n_nodes} < 64")));
    }
    if !cfg.integer_flux() {
        return Ok(f64::INFINITY);
    }
    let waves = PartialWaves::new(*cfg, tol)?;
    let values = (0..n_nodes)
        .into_par_iter()
        .map(|j| {
            let theta = -PI + 2.0 * PI * (j + 1) as f64 / n_nodes as f64;
            Ok(waves.amplitude(theta)?.norm_sqr())
        })
        .collect::<Result<Vec<f64>>>()?;
    let full = 2.0 * PI / n_nodes as f64 * crate::summation::sum(values.iter().copied());
    if n_nodes % 2 == 0 {
        let half =
            4.0 * PI / n_nodes as f64 * crate::summation::sum(values.iter().skip(1).step_by(2).copied());
        let change = (full - half).abs();
        if change > 1e-10 * full.abs() {
            return Err(Error::QuadratureUnresolved { n: n_nodes, change });
        }
    }
    Ok(full)
}

/// |σ − √(8π/k) Im(e^{−iπ/4} f(0))| / σ.
///
/// Only defined for integer α: otherwise f(0) does not exist and σ is
/// infinite, and [`Error::ForwardSingularity`] is returned.
pub fn optical_theorem_residual(cfg: &ScatteringConfig, tol: f64) -> Result<f64> {
    check_finite_radius(cfg)?;
    if !cfg.integer_flux() {
        return Err(Error::ForwardSingularity);
    }
    let waves = PartialWaves::new(*cfg, tol)?;
    let sigma = waves.total_cross_section();
    let f0 = waves.amplitude(0.0)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let forward = (8.0 * PI / cfg.k).sqrt() * (Complex64::new(s, -s) * f0).im;
    Ok((sigma - forward).abs() / sigma)
}
