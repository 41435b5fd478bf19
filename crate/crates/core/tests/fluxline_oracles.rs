//! Flux-line closed forms, the zero-radius wavefunction, the phase Fourier
//! series and the approach of the finite-radius amplitude to a = 0.

use abflux_core::fluxline::{
    ab_amplitude, ab_differential_cross_section, fluxline_wavefunction, fourier_phase_coeff,
    small_radius_limit_check, FluxLineConfig,
};
use abflux_core::specfun::gamma;
use abflux_core::wavefield::{field_at, incident_wave};
use abflux_core::{Complex64, ScatteringConfig};
use proptest::prelude::*;
use std::f64::consts::PI;

const TOL: f64 = 1e-12;

fn line(k: f64, alpha: f64) -> FluxLineConfig {
    FluxLineConfig::new(k, alpha).unwrap()
}

#[test]
fn same_fractional_part_same_modulus() {
    for &theta in &[-2.0, 0.7, PI] {
        let f = ab_amplitude(&line(1.4, 0.3), theta).unwrap().norm();
        for n in [-3.0, -1.0, 2.0] {
            let g = ab_amplitude(&line(1.4, 0.3 + n), theta).unwrap().norm();
            assert!((f - g).abs() < 1e-14 * f);
        }
        let d1 = ab_differential_cross_section(&line(1.0, 0.25), theta).unwrap();
        let d2 = ab_differential_cross_section(&line(1.0, 0.75), theta).unwrap();
        assert!((d1 - d2).abs() < 1e-15 * d1);
    }
}

#[test]
fn forward_divergence_is_inverse_square() {
    let c = line(1.0, 0.3);
    let d1 = ab_differential_cross_section(&c, 1e-3).unwrap();
    let d2 = ab_differential_cross_section(&c, 2e-3).unwrap();
    assert!((d1 / d2 / 4.0 - 1.0).abs() < 1e-3);
    let lead = 4.0 * (0.3 * PI).sin().powi(2) / (2.0 * PI * 1e-6);
    assert!((d1 / lead - 1.0).abs() < 1e-6);
}

#[test]
fn far_field_of_the_flux_line() {
    // u − incident − f e^{ikr}/√r falls off one power of r faster
    let c = line(1.0, 0.5);
    let s = ScatteringConfig::new(1.0, 1.0, 0.5).unwrap();
    for &theta in &[-2.5, 1.5, 3.0] {
        let f = ab_amplitude(&c, theta).unwrap();
        let res = |r: f64| {
            let u = fluxline_wavefunction(&c, r, theta, TOL).unwrap();
            (u - incident_wave(&s, r, theta) - f * Complex64::from_polar(r.powf(-0.5), r)).norm()
        };
        let ratio = res(100.0) / res(50.0);
        assert!(
            (ratio / 2f64.powf(-1.5) - 1.0).abs() < 0.3,
            "theta={theta}: {ratio}"
        );
    }
}

#[test]
fn mirror_invariance_of_the_wavefunction() {
    for &(r, theta) in &[(0.5, 1.0), (3.0, -2.0), (12.0, 2.9)] {
        let u = fluxline_wavefunction(&line(1.0, 0.37), r, theta, TOL).unwrap();
        let v = fluxline_wavefunction(&line(1.0, -0.37), r, -theta, TOL).unwrap();
        assert!((u.norm() - v.norm()).abs() < 1e-12);
    }
}

#[test]
fn finite_field_approaches_the_flux_line() {
    // at fixed r the exterior field of a thin solenoid is the flux-line one
    let c = line(1.0, 0.5);
    for &(r, theta) in &[(1.0, 0.5), (4.0, -2.0), (9.0, 3.0)] {
        let u0 = fluxline_wavefunction(&c, r, theta, TOL).unwrap();
        let s = ScatteringConfig::new(1.0, 1e-8, 0.5).unwrap();
        let u = field_at(&s, r, theta, TOL).unwrap();
        assert!((u - u0).norm() < 1e-6, "r={r}: {u} vs {u0}");
    }
}

#[test]
fn fourier_series_of_the_gauge_phase() {
    for &alpha in &[0.3, 0.5, -1.25] {
        // the series at θ = 0
        let mut s = 0.0;
        for n in -20_000i64..=20_000 {
            s += fourier_phase_coeff(alpha, n);
        }
        assert!((s - 1.0).abs() < 1e-4, "alpha={alpha}: {s}");

        // mean-square error of the partial sums on (−π, π)
        let nodes = 4000;
        let l2 = |big_n: i64| {
            let mut e = 0.0;
            for j in 0..nodes {
                let t = -PI + 2.0 * PI * (j as f64 + 0.5) / nodes as f64;
                let mut sn = Complex64::new(0.0, 0.0);
                for n in -big_n..=big_n {
                    sn += fourier_phase_coeff(alpha, n) * Complex64::from_polar(1.0, n as f64 * t);
                }
                e += (sn - Complex64::from_polar(1.0, -alpha * t)).norm_sqr();
            }
            e / nodes as f64
        };
        let errs: Vec<f64> = [4, 16, 64].iter().map(|&n| l2(n)).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        // the jump at ±π makes the error fall like 1/N
        assert!(errs[2] < 0.1 * errs[0]);
    }
}

#[test]
fn small_radius_limit_at_half_flux() {
    let s = small_radius_limit_check(1.0, 1e-3, 0.5, PI / 2.0, TOL).unwrap();
    assert!((s.f_finite - s.f_ab).norm() / s.f_ab.norm() <= 5e-3);
    let t = small_radius_limit_check(1.0, 5e-4, 0.5, PI / 2.0, TOL).unwrap();
    let shrink = s.pos_part.norm() / t.pos_part.norm();
    assert!((shrink / 2.0 - 1.0).abs() < 0.1, "{shrink}");
}

#[test]
fn limit_chain_is_monotone_with_the_expected_exponent() {
    let alpha = 0.3;
    let p0 = 2.0 * 0.3;
    for &theta in &[0.3, 1.0, 2.2, 3.0] {
        let dev: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&ka| {
                let s = small_radius_limit_check(1.0, ka, alpha, theta, TOL).unwrap();
                (s.f_finite - s.f_ab).norm()
            })
            .collect();
        assert!(dev[0] > dev[1] && dev[1] > dev[2], "{dev:?}");
        for w in dev.windows(2) {
            let p = (w[0] / w[1]).log10();
            assert!(p / p0 < 3.0 && p0 / p < 3.0, "exponent {p}");
        }
    }
}

/// For small ka each channel with m + α < 0 tends to 1 − e^{2iπα}. From the
/// leading small-argument forms the ratio is
/// 2J_{−β}/H⁽¹⁾_{−β} → 2π / (−i e^{iβπ} Γ(β) Γ(1−β)), which the
/// reflection formula Γ(β)Γ(1−β) = π/sin πβ turns into that constant; the
/// Abel sum of the constant is then the flux-line amplitude.
#[test]
fn gamma_product_resummation() {
    let alpha = 0.3;
    let t_inf = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * PI * alpha);
    for m in -6i64..=-1 {
        let beta = -(m as f64 + alpha);
        let g = gamma(beta).unwrap() * gamma(1.0 - beta).unwrap();
        let leading = 2.0 * PI / (Complex64::new(0.0, -1.0) * Complex64::from_polar(g, beta * PI));
        assert!((leading - t_inf).norm() < 1e-13, "m={m}");
    }
    let (k, theta) = (1.0, 1.3);
    let pref = -Complex64::new(0.0, 2.0 * PI * k).sqrt().inv();
    // Σ_{m ≤ −1} e^{imθ} ρ^{|m|} as ρ → 1, Richardson in 1 − ρ
    let damped = |rho: f64| {
        let z = Complex64::from_polar(rho, -theta);
        z / (1.0 - z)
    };
    let s = 2.0 * damped(1.0 - 1e-7) - damped(1.0 - 2e-7);
    let f = pref * t_inf * s;
    let want = ab_amplitude(&line(k, alpha), theta).unwrap();
    assert!((f - want).norm() < 1e-6 * want.norm(), "{f} vs {want}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modulus_squared_is_the_cross_section(k in 0.01f64..50.0, alpha in -5.0f64..5.0,
                                            theta in -3.14f64..3.14) {
        prop_assume!(theta.abs() > 1e-6);
        let c = line(k, alpha);
        let d = ab_differential_cross_section(&c, theta).unwrap();
        let f = ab_amplitude(&c, theta).unwrap();
        prop_assert!((f.norm_sqr() - d).abs() <= 1e-14 * d + 1e-300);
    }

    #[test]
    fn plane_wave_recovery(r in 1e-3f64..30.0, theta in -3.14f64..3.14159) {
        let u = fluxline_wavefunction(&line(1.0, 0.0), r, theta, TOL).unwrap();
        prop_assert!((u - Complex64::from_polar(1.0, r * theta.cos())).norm() < 1e-10);
    }
}
