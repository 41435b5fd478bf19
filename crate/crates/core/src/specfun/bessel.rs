//! Bessel functions of the first and second kind for real order.
//!
//! Non-negative orders use the Temme/Steed scheme: a continued fraction for
//! J'/J, Miller-style downward recurrence to an order μ with |μ| ≤ 1/2 (or
//! μ ≈ x), then either Temme's series (x < 2) or Steed's complex continued
//! fraction (x ≥ 2) fixes J_μ and Y_μ through the Wronskian. Large arguments
//! use the Hankel asymptotic series. Negative orders are always reflected.
//!
//! Everything is computed in the extended-range [`Scaled`] representation so
//! that orders far above the argument neither overflow nor underflow.

use super::gamma::{gamma, ln_gamma, temme_gammas};
use super::scaled::Scaled;
use super::trig::sin_cos_pi;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest supported |ν|.
pub const MAX_ORDER: f64 = 2000.0;
/// Smallest supported argument.
pub const MIN_ARGUMENT: f64 = 1e-100;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const TEMME_LIMIT: f64 = 2.0;
const ASYMPTOTIC_MIN_X: f64 = 25.0;
const RESCALE_AT: f64 = 1e150;
const RESCALE_BITS: i64 = 500;

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Temme's series for the auxiliary order (x < 2).
    Series,
    /// Steed's continued fraction (x ≥ 2).
    ContinuedFraction,
    /// Hankel asymptotic expansion (x ≥ 25 and x ≥ ν²/2, when its
    /// series converges without large intermediate terms).
    Asymptotic,
}

/// J_ν(x) and Y_ν(x) at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselPair {
    pub nu: f64,
    pub x: f64,
    pub j: f64,
    pub y: f64,
    pub regime: Regime,
    /// The order was negative and went through the reflection formulas.
    pub reflected: bool,
}

impl BesselPair {
    pub fn hankel1(&self) -> Complex64 {
        Complex64::new(self.j, self.y)
    }
}

/// Extended-range J and Y.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledPair {
    pub j: Scaled,
    pub y: Scaled,
    pub regime: Regime,
}

impl ScaledPair {
    /// J/Y as an f64. Underflows to 0 for orders far above the argument.
    pub fn ratio(&self) -> f64 {
        self.j.div(self.y).to_f64()
    }
}

fn check_args(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() || nu.abs() > MAX_ORDER {
        return Err(Error::OrderOutOfRange(nu));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    if x < MIN_ARGUMENT {
        return Err(Error::ArgumentTooSmall(x));
    }
    Ok(())
}

/// cos(x − φπ) and sin(x − φπ) with the φπ part reduced exactly.
fn shifted_cos_sin(x: f64, phi: f64) -> (f64, f64) {
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = sin_cos_pi(phi);
    (cx * cp + sx * sp, sx * cp - cx * sp)
}

/// Hankel's expansion. Returns `None` unless the P, Q series converge to
/// full precision without large intermediate terms.
fn hankel_asymptotic(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu4 = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut converged = false;
    for k in 1..400usize {
        let odd = (2 * k - 1) as f64;
        term *= (mu4 - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() > 1.0 {
            return None;
        }
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 * p.abs().max(q.abs()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let (c, s) = shifted_cos_sin(x, 0.5 * nu + 0.25);
    let pre = (2.0 / (PI * x)).sqrt();
    Some((pre * (p * c - q * s), pre * (p * s + q * c)))
}

/// J_ν and Y_ν for ν ≥ 0.
fn jy_nonneg(nu: f64, x: f64) -> ScaledPair {
    debug_assert!(nu >= 0.0);
    if x >= ASYMPTOTIC_MIN_X && 2.0 * x >= nu * nu {
        if let Some((j, y)) = hankel_asymptotic(nu, x) {
            return ScaledPair {
                j: Scaled::from_f64(j),
                y: Scaled::from_f64(y),
                regime: Regime::Asymptotic,
            };
        }
    }

    let nl: usize = if x < TEMME_LIMIT {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1 for h = J'_ν/J_ν = ν/x − J_{ν+1}/J_ν, evaluated from the tail
    // inwards. The forward (Lentz) evaluation loses up to 1e-11 relative
    // when x ≫ ν because of the long oscillatory stretch. isign is the sign
    // of J_ν, taking J at the starting order as positive.
    let top = nu.max(x) + 30.0 * x.cbrt() + 40.0;
    let n_cf1 = (top - nu) as usize + 1;
    let mut t = 0.0;
    let mut isign = 1.0;
    for k in (1..=n_cf1).rev() {
        let lead = 2.0 * (nu + k as f64) * xi;
        let mut den = lead - t;
        if den == 0.0 {
            // exact cancellation: use the rounding scale instead
            den = EPS * lead;
        }
        t = 1.0 / den;
        if t < 0.0 {
            isign = -isign;
        }
    }
    let h = nu * xi - t;

    // downward recurrence ν → μ, unnormalized, with exponent bookkeeping
    let mut rjl = isign;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    let mut jshift: i64 = 0;
    let down = Scaled::new(1.0, -RESCALE_BITS).to_f64();
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE_AT || rjpl.abs() > RESCALE_AT {
            rjl *= down;
            rjpl *= down;
            jshift += RESCALE_BITS;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, rymu, ry1, regime);
    if x < TEMME_LIMIT {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut cc = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
        regime = Regime::Series;
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i - 1) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        // written with hypot so that f → ∞ (x at a zero of J_μ) stays finite
        let pf = p - f;
        let hyp = pf.hypot(q);
        rjmu = ((w * q).sqrt() / hyp).copysign(rjl);
        rymu = (w / q).sqrt().copysign(rjl) * (pf / hyp);
        let rymup = rymu * p + rjmu * q;
        ry1 = xmu * xi * rymu - rymup;
        regime = Regime::ContinuedFraction;
    }

    let j = Scaled::new(rjl1 * (rjmu / rjl), -jshift);

    // forward recurrence for Y, μ → ν
    let mut ym = rymu;
    let mut y1 = ry1;
    let mut yshift: i64 = 0;
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * y1 - ym;
        ym = y1;
        y1 = t;
        if y1.abs() > RESCALE_AT {
            y1 *= down;
            ym *= down;
            yshift += RESCALE_BITS;
        }
    }
    ScaledPair {
        j,
        y: Scaled::new(ym, yshift),
        regime,
    }
}

/// a*ca + b*cb, skipping terms whose coefficient is exactly zero.
fn combine(a: Scaled, ca: f64, b: Scaled, cb: f64) -> Scaled {
    let ta = if ca == 0.0 { Scaled::ZERO } else { a.mul_f64(ca) };
    let tb = if cb == 0.0 { Scaled::ZERO } else { b.mul_f64(cb) };
    ta.add(tb)
}

/// Extended-range J_ν(x), Y_ν(x) for any supported real order.
pub(crate) fn jy_scaled(nu: f64, x: f64) -> Result<ScaledPair> {
    check_args(nu, x)?;
    if nu >= 0.0 {
        return Ok(jy_nonneg(nu, x));
    }
    let mu = -nu;
    let p = jy_nonneg(mu, x);
    let (s, c) = sin_cos_pi(mu);
    Ok(ScaledPair {
        j: combine(p.j, c, p.y, -s),
        y: combine(p.j, s, p.y, c),
        regime: p.regime,
    })
}

/// J_ν(x) and Y_ν(x) together. Values beyond the f64 range saturate to 0 or
/// ±∞.
pub fn bessel_pair(nu: f64, x: f64) -> Result<BesselPair> {
    let p = jy_scaled(nu, x)?;
    Ok(BesselPair {
        nu,
        x,
        j: p.j.to_f64(),
        y: p.y.to_f64(),
        regime: p.regime,
        reflected: nu < 0.0,
    })
}

pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    Ok(jy_scaled(nu, x)?.j.to_f64())
}

pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    Ok(jy_scaled(nu, x)?.y.to_f64())
}

/// H⁽¹⁾_ν(x) = J_ν(x) + iY_ν(x).
pub fn hankel1(nu: f64, x: f64) -> Result<Complex64> {
    Ok(bessel_pair(nu, x)?.hankel1())
}

/// Leading small-argument form of J_ν: (x/2)^ν / Γ(ν+1).
pub fn small_arg_j(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::NonPositiveArgument(x));
    }
    if nu + 1.0 > 0.0 {
        return Ok((nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)?).exp());
    }
    Ok((0.5 * x).powf(nu) / gamma(nu + 1.0)?)
}

/// Leading small-argument forms `(x/2)^ν/Γ(ν+1)` and `(x/2)^{−ν}Γ(ν)/(iπ)`.
///
/// The Hankel form needs ν > 0.
pub fn small_arg_forms(nu: f64, x: f64) -> Result<(f64, Complex64)> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "small-argument Hankel form needs a positive order, got {nu}"
        )));
    }
    let j = small_arg_j(nu, x)?;
    let mag = (ln_gamma(nu)? - nu * (0.5 * x).ln()).exp() / PI;
    Ok((j, Complex64::new(0.0, -mag)))
}

/// Leading large-argument forms √(2/(πx))·cos(x − (ν+½)π/2) and the
/// matching sine.
pub fn large_arg_forms(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    let (c, s) = shifted_cos_sin(x, 0.5 * (nu + 0.5));
    let pre = (2.0 / (PI * x)).sqrt();
    Ok((pre * c, pre * s))
}
