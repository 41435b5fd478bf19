//! The exterior wavefunction of the finite solenoid, its far-field and
//! boundary diagnostics, the vector potential and the probability current.

use crate::error::{Error, Result};
use crate::partialwave::{
    check_angle, solenoid_amplitude, ScatteringConfig, TruncationPolicy, MAX_SIZE_PARAMETER,
};
use crate::quadrature::integrate;
use crate::specfun::{cis_pi, jy_scaled};
use crate::summation::{interleaved, ComplexSum, NeumaierSum};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// A vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarVector {
    pub x: f64,
    pub y: f64,
}

impl PlanarVector {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Polar sampling grid: `n_r` radii from `r_min` to `r_max` inclusive and
/// `n_theta` angles θ_j = −π + 2π(j+1)/n_theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl GridSpec {
    pub fn r_values(&self) -> Vec<f64> {
        if self.n_r == 1 {
            return vec![self.r_min];
        }
        let step = (self.r_max - self.r_min) / (self.n_r - 1) as f64;
        (0..self.n_r)
            .map(|i| {
                if i + 1 == self.n_r {
                    self.r_max
                } else {
                    self.r_min + i as f64 * step
                }
            })
            .collect()
    }

    pub fn theta_values(&self) -> Vec<f64> {
        let n = self.n_theta as f64;
        (0..self.n_theta)
            .map(|j| -PI + 2.0 * PI * (j + 1) as f64 / n)
            .collect()
    }
}

/// u(r, θ) on a polar grid; `samples[i][j]` is at `(r_values[i], theta_values[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub r_values: Vec<f64>,
    pub theta_values: Vec<f64>,
    pub samples: Vec<Vec<Complex64>>,
}

/// c_m = i^m e^{iαπ/2} / (i H⁽¹⁾_{m+α}(ka)); exactly 0 when |H| is beyond
/// the extended range.
pub fn expansion_coefficients(cfg: &ScatteringConfig, m: i64) -> Result<Complex64> {
    if !(cfg.a > 0.0) {
        return Err(Error::InvalidParameter(
            "expansion coefficients need a > 0".into(),
        ));
    }
    let p = jy_scaled(m as f64 + cfg.alpha, cfg.ka())?;
    let d = p.j.mul(p.j).add(p.y.mul(p.y));
    let inv_h = Complex64::new(p.j.div(d).to_f64(), p.y.div(d).neg().to_f64());
    Ok(coefficient_phase(cfg.alpha, m) * inv_h)
}

/// i^m e^{iαπ/2} / i.
fn coefficient_phase(alpha: f64, m: i64) -> Complex64 {
    cis_pi(0.5 * m as f64) * cis_pi(0.5 * alpha) * Complex64::new(0.0, -1.0)
}

/// c_m [J_{m+α}(ka)Y_{m+α}(kr) − Y_{m+α}(ka)J_{m+α}(kr)], formed in the
/// extended range so the boundary value r = a cancels exactly.
///
/// The bracket is even in the order, so it is always taken at β = |m+α|;
/// with the reflected functions it would be a difference of two products
/// many orders of magnitude larger than the result. For m + α < 0 the
/// Hankel function is rotated instead, H⁽¹⁾_{−β} = e^{iβπ} H⁽¹⁾_β.
fn radial_term(cfg: &ScatteringConfig, m: i64, kr: f64) -> Result<Complex64> {
    let order = m as f64 + cfg.alpha;
    let beta = order.abs();
    let pa = jy_scaled(beta, cfg.ka())?;
    let pr = jy_scaled(beta, kr)?;
    let num = pa.j.mul(pr.y).sub(pa.y.mul(pr.j));
    if num.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d = pa.j.mul(pa.j).add(pa.y.mul(pa.y));
    // num / H = num (J − iY) / (J² + Y²)
    let re = num.mul(pa.j).div(d).to_f64();
    let im = num.mul(pa.y).div(d).neg().to_f64();
    let mut phase = coefficient_phase(cfg.alpha, m);
    if order < 0.0 {
        phase *= cis_pi(-beta);
    }
    Ok(phase * Complex64::new(re, im))
}

/// θ-independent radial data of the exterior series at one radius.
struct RadialSeries {
    terms: Vec<(i64, Complex64)>,
}

impl RadialSeries {
    fn new(cfg: &ScatteringConfig, r: f64, tol: f64) -> Result<Self> {
        if !(cfg.a > 0.0) {
            return Err(Error::InvalidParameter("field needs a > 0".into()));
        }
        if !r.is_finite() || r < cfg.a {
            return Err(Error::InsideCylinder { r, a: cfg.a });
        }
        let kr = cfg.k * r;
        if kr > MAX_SIZE_PARAMETER {
            return Err(Error::InvalidParameter(format!("kr = {kr} exceeds 1000")));
        }
        let t =
            TruncationPolicy::new(tol)?.resolve(kr, cfg.alpha, |m| Ok(radial_term(cfg, m, kr)?.norm()))?;
        let terms = interleaved(t.lo, t.hi)
            .map(|m| Ok((m, radial_term(cfg, m, kr)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { terms })
    }

    fn at(&self, theta: f64) -> Complex64 {
        let mut s = ComplexSum::new();
        for &(m, t) in &self.terms {
            s.add(t * Complex64::from_polar(1.0, m as f64 * theta));
        }
        s.value()
    }

    /// Largest single term, the natural scale for cancellation at r = a.
    fn max_term(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, t| m.max(t.1.norm()))
    }
}

/// u(r, θ) = Σ c_m e^{imθ}[J_{m+α}(ka)Y_{m+α}(kr) − Y_{m+α}(ka)J_{m+α}(kr)].
pub fn field_at(cfg: &ScatteringConfig, r: f64, theta: f64, tol: f64) -> Result<Complex64> {
    check_angle(theta)?;
    Ok(RadialSeries::new(cfg, r, tol)?.at(theta))
}

/// Largest |term| of the series at radius r, the scale against which the
/// boundary residual |u(a, θ)| is judged.
pub fn field_term_scale(cfg: &ScatteringConfig, r: f64, tol: f64) -> Result<f64> {
    Ok(RadialSeries::new(cfg, r, tol)?.max_term())
}

/// [`field_at`] on every node of `spec`, rows computed in parallel.
pub fn field_grid(cfg: &ScatteringConfig, spec: &GridSpec, tol: f64) -> Result<FieldGrid> {
    if spec.n_r == 0 || spec.n_theta == 0 {
        return Err(Error::InvalidParameter(
            "grid needs at least one node per axis".into(),
        ));
    }
    if !(spec.r_min <= spec.r_max) {
        return Err(Error::InvalidParameter(format!(
            "grid radii {}..{} are not ascending",
            spec.r_min, spec.r_max
        )));
    }
    if spec.r_min < cfg.a {
        return Err(Error::InsideCylinder {
            r: spec.r_min,
            a: cfg.a,
        });
    }
    let r_values = spec.r_values();
    let theta_values = spec.theta_values();
    let samples = r_values
        .par_iter()
        .map(|&r| {
            let series = RadialSeries::new(cfg, r, tol)?;
            Ok(theta_values.iter().map(|&t| series.at(t)).collect())
        })
        .collect::<Result<Vec<Vec<Complex64>>>>()?;
    Ok(FieldGrid {
        r_values,
        theta_values,
        samples,
    })
}

/// e^{i(kr cos θ − αθ̃)} with θ̃ = θ for θ ≤ 0 and θ − 2π for θ > 0.
///
/// The gauge phase −αθ̃ jumps on the forward ray θ = 0 rather than on the
/// backward ray, which is where the scattered wave of a fractional flux
/// carries the compensating discontinuity.
pub fn incident_wave(cfg: &ScatteringConfig, r: f64, theta: f64) -> Complex64 {
    let branch = if theta > 0.0 { theta - 2.0 * PI } else { theta };
    Complex64::from_polar(1.0, cfg.k * r * theta.cos() - cfg.alpha * branch)
}

/// |u(r, θ) − (incident + f(θ) e^{ikr}/√r)|.
pub fn farfield_residual(cfg: &ScatteringConfig, r: f64, theta: f64, tol: f64) -> Result<f64> {
    if cfg.k * r < 20.0 {
        return Err(Error::InvalidParameter(format!("kr = {} is below 20", cfg.k * r)));
    }
    let u = field_at(cfg, r, theta, tol)?;
    let f = solenoid_amplitude(cfg, theta, tol)?;
    let out = f * Complex64::from_polar(1.0 / r.sqrt(), cfg.k * r);
    Ok((u - incident_wave(cfg, r, theta) - out).norm())
}

/// The solenoid potential: (B/2)(−y, x) inside r ≤ a, (Ba²/2)(−y, x)/r² outside.
pub fn vector_potential(b: f64, a: f64, point: (f64, f64)) -> PlanarVector {
    let (x, y) = point;
    let r2 = x * x + y * y;
    let s = if r2 <= a * a {
        0.5 * b
    } else {
        0.5 * b * a * a / r2
    };
    PlanarVector::new(-s * y, s * x)
}

/// ∮ A·dl around the circle of radius `radius` with `n` equally spaced
/// nodes (exact for trigonometric integrands of low degree).
pub fn circulation_circle(b: f64, a: f64, radius: f64, n: usize) -> f64 {
    let mut s = NeumaierSum::new();
    for j in 0..n {
        let t = 2.0 * PI * j as f64 / n as f64;
        let (sn, cs) = t.sin_cos();
        let v = vector_potential(b, a, (radius * cs, radius * sn));
        s.add(v.x * -radius * sn + v.y * radius * cs);
    }
    s.value() * 2.0 * PI / n as f64
}

/// ∮ A·dl counterclockwise around the square |x|, |y| ≤ half_width,
/// with an `n`-point Gauss-Legendre rule on each half side.
pub fn circulation_square(b: f64, a: f64, half_width: f64, n: usize) -> f64 {
    let h = half_width;
    // (start, direction) of each side, traversed counterclockwise
    let sides = [
        ((h, -h), (0.0, 1.0)),
        ((h, h), (-1.0, 0.0)),
        ((-h, h), (0.0, -1.0)),
        ((-h, -h), (1.0, 0.0)),
    ];
    let mut s = NeumaierSum::new();
    for ((x0, y0), (dx, dy)) in sides {
        let tangential = |t: f64| {
            let v = vector_potential(b, a, (x0 + t * dx, y0 + t * dy));
            v.x * dx + v.y * dy
        };
        // split at the midpoint, where the integrand peaks
        s.add(integrate(tangential, 0.0, h, n));
        s.add(integrate(tangential, h, 2.0 * h, n));
    }
    s.value()
}

/// ∂A_y/∂x − ∂A_x/∂y by central differences.
pub fn vector_potential_curl(b: f64, a: f64, point: (f64, f64), h: f64) -> f64 {
    let (x, y) = point;
    let ay = |x: f64, y: f64| vector_potential(b, a, (x, y)).y;
    let ax = |x: f64, y: f64| vector_potential(b, a, (x, y)).x;
    (ay(x + h, y) - ay(x - h, y)) / (2.0 * h) - (ax(x, y + h) - ax(x, y - h)) / (2.0 * h)
}

/// Which wavefunction the current is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveComponent {
    /// The gauge-transformed plane wave e^{i(kr cos θ − αθ)} alone.
    Incident,
    /// The full exterior solution.
    Total,
}

/// J = Im(u*∇u) + (α/r)|u|² θ̂ with ħ = μ = 1 and ∇u from central
/// differences of step h in x and y.
pub fn probability_current(
    cfg: &ScatteringConfig,
    r: f64,
    theta: f64,
    h: f64,
    wave: WaveComponent,
    tol: f64,
) -> Result<PlanarVector> {
    check_angle(theta)?;
    if !(h > 0.0) || h * cfg.k > 0.1 {
        return Err(Error::StepTooLarge { h });
    }
    if !(r > cfg.a + h) {
        return Err(Error::InsideCylinder { r: r - h, a: cfg.a });
    }
    let (x0, y0) = (r * theta.cos(), r * theta.sin());
    let eval = |x: f64, y: f64| -> Result<Complex64> {
        let rr = x.hypot(y);
        let mut t = y.atan2(x);
        match wave {
            WaveComponent::Incident => {
                // keep the gauge phase on the branch of the centre point
                if t - theta > PI {
                    t -= 2.0 * PI;
                } else if theta - t > PI {
                    t += 2.0 * PI;
                }
                Ok(Complex64::from_polar(1.0, cfg.k * rr * t.cos() - cfg.alpha * t))
            }
            WaveComponent::Total => {
                if t <= -PI {
                    t = PI;
                }
                field_at(cfg, rr, t, tol)
            }
        }
    };
    let u = eval(x0, y0)?;
    let ux = (eval(x0 + h, y0)? - eval(x0 - h, y0)?) / (2.0 * h);
    let uy = (eval(x0, y0 + h)? - eval(x0, y0 - h)?) / (2.0 * h);
    let g = cfg.alpha / r * u.norm_sqr();
    let (st, ct) = theta.sin_cos();
    Ok(PlanarVector::new(
        (u.conj() * ux).im - g * st,
        (u.conj() * uy).im + g * ct,
    ))
}
