//! Numerical self-checks of the whole library, grouped into numbered
//! criteria. The command-line `verify` command and the acceptance test
//! target both run these.

use crate::fluxline::{
    ab_amplitude, ab_differential_cross_section, fluxline_wavefunction, small_radius_limit_check,
    FluxLineConfig,
};
use crate::partialwave::{
    cross_section_by_quadrature, hard_cylinder_amplitude, optical_theorem_residual, total_cross_section,
    PartialWaves, ScatteringConfig,
};
use crate::specfun::{bessel_pair, sin_cos_pi};
use crate::wavefield::{
    circulation_circle, circulation_square, farfield_residual, field_grid, probability_current, GridSpec,
    WaveComponent,
};
use crate::{Complex64, Result, DEFAULT_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

const SEED: u64 = 20_261_015;

/// One measured quantity and the bound it must not exceed.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when `measured <= threshold`; NaN and errors never pass.
    pub fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            threshold,
            pass: measured <= threshold,
        }
    }

    fn failed(name: &str, threshold: f64) -> Self {
        Self::at_most(name, f64::INFINITY, threshold)
    }
}

/// A numbered group of checks; it passes when all of them do.
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<CheckResult>,
}

impl Criterion {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Specfun,
    Partialwave,
    Fluxline,
    Wavefield,
}

impl Suite {
    pub fn criteria(self) -> &'static [u32] {
        match self {
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
            Suite::Specfun => &[1],
            Suite::Partialwave => &[2, 3, 4, 5],
            Suite::Fluxline => &[6, 7, 8],
            Suite::Wavefield => &[9, 10, 11, 12],
        }
    }
}

pub fn run_suite(suite: Suite) -> Vec<Criterion> {
    suite.criteria().iter().map(|&id| run_criterion(id)).collect()
}

/// Runs criterion `id` (1 to 12).
pub fn run_criterion(id: u32) -> Criterion {
    let (title, checks) = match id {
        1 => ("special-function contract", special_functions()),
        2 => ("hard-cylinder reduction", hard_cylinder()),
        3 => ("cross section by quadrature", cross_section_quadrature()),
        4 => ("optical theorem", optical_theorem()),
        5 => ("flux periodicity", flux_periodicity()),
        6 => ("flux-line closed form", flux_line_closed_form()),
        7 => ("small-radius limit", small_radius_limit()),
        8 => ("plane-wave recovery", plane_wave_recovery()),
        9 => ("Dirichlet boundary", dirichlet_boundary()),
        10 => ("far-field matching", far_field_matching()),
        11 => ("loop flux", loop_flux()),
        12 => ("incident current", incident_current()),
        _ => ("unknown criterion", vec![CheckResult::failed("unknown", 0.0)]),
    };
    Criterion { id, title, checks }
}

/// |a − b|/|b|, infinite when either side is not finite.
fn rel_dev(a: f64, b: f64) -> f64 {
    if !a.is_finite() || !b.is_finite() {
        return f64::INFINITY;
    }
    if a == b {
        return 0.0;
    }
    (a - b).abs() / b.abs()
}

fn rel_dev_c(a: Complex64, b: Complex64) -> f64 {
    if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
        return f64::INFINITY;
    }
    if a == b {
        return 0.0;
    }
    (a - b).norm() / b.norm()
}

/// Worst value of a fallible measurement; an error counts as +∞.
fn worst(values: impl IntoIterator<Item = Result<f64>>) -> f64 {
    values.into_iter().fold(0.0, |m, v| match v {
        Ok(x) if !x.is_nan() => m.max(x),
        _ => f64::INFINITY,
    })
}

/// J and Y at order n + ½ from the terminating trigonometric sums, and the
/// condition number of that evaluation.
pub fn half_order_closed_form(n: usize, x: f64) -> (f64, f64, f64) {
    let nf = n as f64;
    let mut coef = 1.0;
    let (mut p, mut q, mut pa, mut qa) = (0.0, 0.0, 0.0, 0.0);
    for j in 0..=n {
        if j > 0 {
            let jf = j as f64;
            coef *= (nf + jf) * (nf - jf + 1.0) / (jf * 2.0 * x);
        }
        let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if j % 2 == 0 {
            p += sign * coef;
            pa += coef;
        } else {
            q += sign * coef;
            qa += coef;
        }
    }
    let (sx, cx) = x.sin_cos();
    // sin and cos of x − nπ/2
    let (s, c) = match n % 4 {
        0 => (sx, cx),
        1 => (-cx, sx),
        2 => (-sx, -cx),
        _ => (cx, -sx),
    };
    let pre = (2.0 / (PI * x)).sqrt();
    let j = pre * (s * p + c * q);
    let y = -pre * (c * p - s * q);
    let cond = pre * (pa + qa) / j.abs().min(y.abs());
    (j, y, cond)
}

fn special_functions() -> Vec<CheckResult> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples: Vec<(f64, f64)> = (0..10_000)
        .map(|_| {
            let nu = rng.gen_range(-20.0..=20.0);
            let x = 10f64.powf(rng.gen_range(-3.0..=500f64.log10()));
            (nu, x)
        })
        .collect();
    let rows: Vec<Result<(f64, f64, Option<f64>)>> = samples
        .par_iter()
        .map(|&(nu, x)| {
            let a = bessel_pair(nu, x)?;
            let b = bessel_pair(nu + 1.0, x)?;
            let w = 2.0 / (PI * x);
            let (t1, t2) = (b.j * a.y, a.j * b.y);
            let wr = ((t1 - t2) - w).abs() / w.max(t1.abs()).max(t2.abs());

            let mu = nu.abs();
            let p = bessel_pair(mu, x)?;
            let m = bessel_pair(-mu, x)?;
            let (s, c) = sin_cos_pi(mu);
            let scale_j = (p.j * c).abs().max((p.y * s).abs());
            let scale_y = (p.j * s).abs().max((p.y * c).abs());
            let rj = (m.j - (p.j * c - p.y * s)).abs() / scale_j;
            let ry = (m.y - (p.j * s + p.y * c)).abs() / scale_y;

            let n = (mu - 0.5).round().clamp(0.0, 19.0) as usize;
            let (hj, hy, cond) = half_order_closed_form(n, x);
            let half = if cond <= 1e3 {
                let order = n as f64 + 0.5;
                let q = bessel_pair(order, x)?;
                let r = bessel_pair(-order, x)?;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let devs = [(q.j, hj), (q.y, hy), (r.j, -sign * hy), (r.y, sign * hj)];
                Some(
                    devs.iter()
                        .fold(0.0f64, |acc, &(g, w)| acc.max(((g - w) / w).abs())),
                )
            } else {
                None
            };
            Ok((wr, rj.max(ry), half))
        })
        .collect();
    let wronskian = worst(rows.iter().map(|r| r.clone().map(|t| t.0)));
    let reflection = worst(rows.iter().map(|r| r.clone().map(|t| t.1)));
    let half = worst(rows.iter().filter_map(|r| match r {
        Ok((_, _, Some(h))) => Some(Ok(*h)),
        Ok(_) => None,
        Err(e) => Some(Err(e.clone())),
    }));
    let elapsed = start.elapsed().as_secs_f64();
    vec![
        CheckResult::at_most("wronskian_residual", wronskian, 1e-10),
        CheckResult::at_most("reflection_residual", reflection, 1e-10),
        CheckResult::at_most("half_order_relative_error", half, 1e-11),
        CheckResult::at_most("runtime_seconds", elapsed, 10.0),
    ]
}

fn hard_cylinder() -> Vec<CheckResult> {
    let dev = [0.1, 1.0, 10.0, 50.0]
        .par_iter()
        .map(|&ka| {
            let waves = PartialWaves::new(ScatteringConfig::new(1.0, ka, 0.0)?, DEFAULT_TOL)?;
            Ok(worst((0..128).map(|j| {
                let theta = -PI + 2.0 * PI * (j as f64 + 0.5) / 128.0;
                Ok(rel_dev_c(
                    waves.amplitude(theta)?,
                    hard_cylinder_amplitude(1.0, ka, theta)?,
                ))
            })))
        })
        .collect::<Vec<_>>();
    vec![CheckResult::at_most("max_relative_deviation", worst(dev), 1e-12)]
}

/// Random (k, a, α) with ka ≤ 50 and α ∈ [−2, 2].
fn random_configs(n: usize, seed: u64) -> Vec<ScatteringConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(0.2..5.0);
            let ka = 10f64.powf(rng.gen_range(-1.0..50f64.log10()));
            let alpha = rng.gen_range(-2.0..2.0);
            ScatteringConfig::new(k, ka / k, alpha).expect("valid random configuration")
        })
        .collect()
}

fn quadrature_deviation(cfg: &ScatteringConfig) -> Result<f64> {
    let sigma = total_cross_section(cfg, DEFAULT_TOL)?;
    let m = crate::partialwave::truncation_order(cfg.ka(), cfg.alpha, DEFAULT_TOL)?;
    let n = 8 * (m + 1 + cfg.alpha.abs().ceil() as usize);
    Ok(rel_dev(cross_section_by_quadrature(cfg, n, DEFAULT_TOL)?, sigma))
}

fn cross_section_quadrature() -> Vec<CheckResult> {
    let configs = random_configs(20, SEED + 3);
    let all = worst(configs.par_iter().map(quadrature_deviation).collect::<Vec<_>>());
    let integer = worst(
        configs
            .par_iter()
            .map(|c| quadrature_deviation(&c.with_alpha(c.alpha.round())))
            .collect::<Vec<_>>(),
    );
    vec![
        CheckResult::at_most("relative_deviation", all, 1e-8),
        CheckResult::at_most("relative_deviation_integer_flux", integer, 1e-8),
    ]
}

fn optical_theorem() -> Vec<CheckResult> {
    let configs = random_configs(100, SEED + 4);
    let all = worst(
        configs
            .par_iter()
            .map(|c| optical_theorem_residual(c, DEFAULT_TOL))
            .collect::<Vec<_>>(),
    );
    let integer = worst(
        configs
            .par_iter()
            .map(|c| optical_theorem_residual(&c.with_alpha(c.alpha.round()), DEFAULT_TOL))
            .collect::<Vec<_>>(),
    );
    let flux_free = worst(
        configs
            .par_iter()
            .map(|c| optical_theorem_residual(&c.with_alpha(0.0), DEFAULT_TOL))
            .collect::<Vec<_>>(),
    );
    vec![
        CheckResult::at_most("relative_residual", all, 1e-8),
        CheckResult::at_most("relative_residual_integer_flux", integer, 1e-8),
        CheckResult::at_most("relative_residual_zero_flux", flux_free, 1e-8),
    ]
}

fn flux_periodicity() -> Vec<CheckResult> {
    let (k, a) = (1.3, 0.8);
    let alphas = [0.1, 0.3, 0.5, 0.9];
    let sigma = worst(alphas.iter().map(|&al| {
        let s0 = total_cross_section(&ScatteringConfig::new(k, a, al)?, DEFAULT_TOL)?;
        let s1 = total_cross_section(&ScatteringConfig::new(k, a, al + 1.0)?, DEFAULT_TOL)?;
        Ok(rel_dev(s1, s0))
    }));
    let dcs = worst(
        alphas
            .par_iter()
            .map(|&al| {
                let w0 = PartialWaves::new(ScatteringConfig::new(k, a, al)?, DEFAULT_TOL)?;
                let w1 = PartialWaves::new(ScatteringConfig::new(k, a, al + 1.0)?, DEFAULT_TOL)?;
                Ok(worst((0..64).map(|j| {
                    let theta = -PI + 2.0 * PI * (j as f64 + 0.5) / 64.0;
                    Ok(rel_dev(
                        w1.amplitude(theta)?.norm_sqr(),
                        w0.amplitude(theta)?.norm_sqr(),
                    ))
                })))
            })
            .collect::<Vec<_>>(),
    );
    vec![
        CheckResult::at_most("total_cross_section_relative_deviation", sigma, 1e-12),
        CheckResult::at_most("differential_cross_section_relative_deviation", dcs, 1e-12),
    ]
}

fn flux_line_closed_form() -> Vec<CheckResult> {
    let mut cases = Vec::new();
    for &k in &[0.1, 1.0, 7.5] {
        for &alpha in &[-1.7, -0.5, 0.1, 0.25, 0.5, 0.75, 0.9, 2.3] {
            for j in 0..36 {
                let theta = -PI + 2.0 * PI * (j as f64 + 0.5) / 36.0;
                cases.push((k, alpha, theta));
            }
        }
    }
    let identity = worst(cases.iter().map(|&(k, alpha, theta)| {
        let c = FluxLineConfig::new(k, alpha)?;
        let s = sin_cos_pi(alpha).0;
        let want = s * s / (2.0 * PI * k * (0.5 * theta).sin().powi(2));
        let got = ab_amplitude(&c, theta)?.norm_sqr();
        let d = ab_differential_cross_section(&c, theta)?;
        Ok(rel_dev(got, want).max(rel_dev(d, want)))
    }));
    let half = FluxLineConfig::new(1.0, 0.5)
        .and_then(|c| ab_amplitude(&c, PI))
        .map(|f| (f.norm_sqr() - 1.0 / (2.0 * PI)).abs())
        .unwrap_or(f64::INFINITY);
    vec![
        CheckResult::at_most("closed_form_relative_deviation", identity, 1e-14),
        CheckResult::at_most("half_flux_backscatter_deviation", half, 1e-14),
    ]
}

fn small_radius_limit() -> Vec<CheckResult> {
    let (alpha, ka) = (0.3, 1e-3);
    let nu = alpha - f64::floor(alpha);
    let p0 = 2.0 * nu.min(1.0 - nu);
    let thetas: Vec<f64> = (0..28).map(|i| 0.3 + 0.1 * i as f64).collect();
    let limit = worst(thetas.iter().map(|&t| {
        let s = small_radius_limit_check(1.0, ka, alpha, t, DEFAULT_TOL)?;
        Ok(rel_dev_c(s.f_finite, s.f_ab))
    }));
    let scaling = worst(thetas.iter().map(|&t| {
        let s1 = small_radius_limit_check(1.0, ka, alpha, t, DEFAULT_TOL)?;
        let s2 = small_radius_limit_check(1.0, 0.5 * ka, alpha, t, DEFAULT_TOL)?;
        let p = (s1.pos_part.norm() / s2.pos_part.norm()).log2();
        Ok((p / p0).max(p0 / p))
    }));
    vec![
        CheckResult::at_most("relative_deviation_from_flux_line", limit, 3.0 * ka.powf(p0)),
        CheckResult::at_most("positive_channel_exponent_ratio", scaling, 3.0),
    ]
}

fn plane_wave_recovery() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let cfg = FluxLineConfig::new(1.0, 0.0).expect("valid flux line");
    let points: Vec<(f64, f64)> = (0..100)
        .map(|_| {
            (
                rng.gen_range(1e-3..=30.0),
                rng.gen_range(-PI..PI).max(-PI + 1e-12),
            )
        })
        .collect();
    let dev = worst(
        points
            .par_iter()
            .map(|&(r, t)| {
                let u = fluxline_wavefunction(&cfg, r, t, DEFAULT_TOL)?;
                Ok((u - Complex64::from_polar(1.0, r * t.cos())).norm())
            })
            .collect::<Vec<_>>(),
    );
    vec![CheckResult::at_most("max_deviation", dev, 1e-10)]
}

fn dirichlet_boundary() -> Vec<CheckResult> {
    let measured = [
        (1.0, 1.0, 0.3),
        (2.5, 1.2, -1.7),
        (0.4, 3.0, 0.5),
        (5.0, 4.0, 0.0),
    ]
    .iter()
    .map(|&(k, a, alpha)| {
        let cfg = ScatteringConfig::new(k, a, alpha)?;
        let boundary = field_grid(
            &cfg,
            &GridSpec {
                r_min: a,
                r_max: a,
                n_r: 1,
                n_theta: 720,
            },
            DEFAULT_TOL,
        )?;
        let near = field_grid(
            &cfg,
            &GridSpec {
                r_min: a,
                r_max: 2.0 * a,
                n_r: 11,
                n_theta: 720,
            },
            DEFAULT_TOL,
        )?;
        let peak = |g: &crate::FieldGrid| g.samples.iter().flatten().fold(0.0f64, |m, u| m.max(u.norm()));
        Ok(peak(&boundary) / peak(&near))
    });
    vec![CheckResult::at_most(
        "relative_boundary_residual",
        worst(measured),
        1e-12,
    )]
}

fn far_field_matching() -> Vec<CheckResult> {
    let cfg = ScatteringConfig::new(1.0, 1.0, 0.3).expect("valid configuration");
    let radii = [25.0f64, 50.0, 100.0];
    let slopes = [-2.5, 2.0, 3.0].par_iter().map(|&theta| {
        let res = radii
            .iter()
            .map(|&r| farfield_residual(&cfg, r, theta, DEFAULT_TOL))
            .collect::<Result<Vec<f64>>>()?;
        // least-squares slope of ln residual against ln kr
        let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
        let ys: Vec<f64> = res.iter().map(|v| v.ln()).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        Ok((sxy / sxx + 1.5).abs())
    });
    vec![CheckResult::at_most(
        "decay_exponent_deviation",
        worst(slopes.collect::<Vec<_>>()),
        0.5,
    )]
}

fn loop_flux() -> Vec<CheckResult> {
    let (b, a) = (1.7, 1.3);
    let flux = PI * a * a * b;
    let circles = (0..5).map(|i| {
        let radius = a * (1.1 + (10.0 - 1.1) * i as f64 / 4.0);
        Ok(rel_dev(circulation_circle(b, a, radius, 256), flux))
    });
    let square = rel_dev(circulation_square(b, a, 2.0 * a, 32), flux);
    vec![
        CheckResult::at_most("circle_relative_deviation", worst(circles), 1e-10),
        CheckResult::at_most("square_relative_deviation", square, 1e-10),
    ]
}

fn incident_current() -> Vec<CheckResult> {
    let configs = [(1.0, 1.0, 0.3), (2.5, 0.5, -1.4), (0.7, 1.0, 0.0)];
    let deviation = |k: f64, a: f64, alpha: f64, h: f64| -> Result<f64> {
        let cfg = ScatteringConfig::new(k, a, alpha)?;
        let j = probability_current(&cfg, 10.0 / k, 1.0, h, WaveComponent::Incident, DEFAULT_TOL)?;
        Ok((j.x - k).hypot(j.y) / k)
    };
    let accuracy = worst(configs.iter().map(|&(k, a, al)| deviation(k, a, al, 1e-4 / k)));
    let order = worst(configs.iter().map(|&(k, a, al)| {
        let d1 = deviation(k, a, al, 2e-2 / k)?;
        let d2 = deviation(k, a, al, 1e-2 / k)?;
        Ok(((d1 / d2).log2() - 2.0).abs())
    }));
    vec![
        CheckResult::at_most("relative_current_deviation", accuracy, 1e-6),
        CheckResult::at_most("convergence_order_deviation", order, 0.5),
    ]
}
