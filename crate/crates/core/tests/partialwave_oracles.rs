//! Amplitude and cross sections against high-precision reference values,
//! an Abel-damped direct summation, and the flux-free closed forms.

use abflux_core::partialwave::{
    cross_section_by_quadrature, differential_cross_section, hard_cylinder_amplitude,
    optical_theorem_residual, solenoid_amplitude, total_cross_section, PartialWaves, ScatteringConfig,
};
use abflux_core::specfun::hankel1;
use abflux_core::{Complex64, Error};
use proptest::prelude::*;
use std::f64::consts::PI;

const TOL: f64 = 1e-12;

fn cfg(k: f64, a: f64, alpha: f64) -> ScatteringConfig {
    ScatteringConfig::new(k, a, alpha).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

// tools/oracle_values.py, mpmath at 50 digits
#[test]
fn reference_amplitudes() {
    let cases = [
        (
            1.0,
            1.0,
            0.5,
            PI / 2.0,
            Complex64::new(-0.285_624_796_629_334_64, -0.727_790_057_323_178_36),
        ),
        (
            2.0,
            0.7,
            -1.3,
            2.0,
            Complex64::new(-0.091_646_612_290_216_862, 0.627_318_491_139_288_52),
        ),
        (
            1.0,
            1.0,
            0.0,
            PI,
            Complex64::new(0.181_849_734_688_867_65, 0.762_686_731_982_292_18),
        ),
    ];
    for (k, a, alpha, theta, want) in cases {
        let got = solenoid_amplitude(&cfg(k, a, alpha), theta, TOL).unwrap();
        assert!(
            rel(got, want) < 1e-12,
            "k={k} a={a} alpha={alpha}: {got} vs {want}"
        );
    }
}

#[test]
fn reference_hard_cylinder_cross_sections() {
    for (k, a, want) in [
        (1.0, 1.0, 5.913_113_722_121_162_3),
        (2.0, 3.0, 13.793_594_110_358_254),
    ] {
        let s = total_cross_section(&cfg(k, a, 0.0), TOL).unwrap();
        assert!(((s - want) / want).abs() < 1e-12, "{s} vs {want}");
    }
}

/// Σ e^{imθ − ε|m+α|} T_m computed directly for a sequence of ε, then
/// Richardson-extrapolated to ε = 0.
fn abel_sum(c: &ScatteringConfig, theta: f64, eps: f64) -> Complex64 {
    let x = c.ka();
    let mut s = Complex64::new(0.0, 0.0);
    for m in -40_000i64..=40 {
        let o = m as f64 + c.alpha;
        let t = if o < -40.0 {
            // T_m equals its limit 1 − e^{2iπα} to far below 1e-30 here
            Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * PI * c.alpha)
        } else {
            let h = hankel1(o, x).unwrap();
            2.0 * h.re / h
        };
        s += t * Complex64::from_polar((-eps * o.abs()).exp(), m as f64 * theta);
    }
    s
}

#[test]
fn resummation_matches_abel_limit() {
    let c = cfg(1.3, 0.9, 0.37);
    let theta = 1.1;
    let pref = -Complex64::new(0.0, 2.0 * PI * c.k).sqrt().inv();
    let (e1, e2) = (2e-3, 1e-3);
    let s1 = abel_sum(&c, theta, e1);
    let s2 = abel_sum(&c, theta, e2);
    // the damped sum is analytic in ε with a linear leading correction
    let extrap = 2.0 * s2 - s1;
    let got = solenoid_amplitude(&c, theta, TOL).unwrap();
    assert!(rel(pref * extrap, got) < 1e-5, "{} vs {got}", pref * extrap);
}

#[test]
fn flux_free_amplitude_agrees_with_hard_cylinder() {
    for &(k, a) in &[(1.0, 1.0), (0.3, 0.5), (5.0, 10.0)] {
        for i in 0..36 {
            let theta = -PI + (i as f64 + 0.5) * 2.0 * PI / 36.0;
            let f = solenoid_amplitude(&cfg(k, a, 0.0), theta, TOL).unwrap();
            let h = hard_cylinder_amplitude(k, a, theta).unwrap();
            assert!(rel(f, h) < 1e-12, "k={k} a={a} theta={theta}");
        }
    }
}

#[test]
fn integer_flux_is_invisible() {
    let base = cfg(1.7, 1.2, 0.0);
    let w0 = PartialWaves::new(base, TOL).unwrap();
    for n in [-3.0, -1.0, 1.0, 2.0] {
        let wn = PartialWaves::new(base.with_alpha(n), TOL).unwrap();
        for &theta in &[-2.5, -0.4, 0.0, 1.0, PI] {
            let f0 = w0.amplitude(theta).unwrap();
            let fnn = wn.amplitude(theta).unwrap();
            // f(α + n) = e^{−inθ} f(α)
            let want = Complex64::from_polar(1.0, -n * theta) * f0;
            assert!(rel(fnn, want) < 1e-12, "n={n} theta={theta}");
            assert!((fnn.norm_sqr() - f0.norm_sqr()).abs() < 1e-12 * f0.norm_sqr());
        }
    }
}

#[test]
fn optical_theorem_for_integer_flux() {
    for &(k, a, alpha) in &[
        (1.0, 1.0, 0.0),
        (0.2, 1.0, 2.0),
        (3.0, 2.0, -1.0),
        (10.0, 5.0, 0.0),
    ] {
        let r = optical_theorem_residual(&cfg(k, a, alpha), TOL).unwrap();
        assert!(r < 1e-10, "k={k} a={a} alpha={alpha}: {r}");
    }
}

#[test]
fn quadrature_matches_channel_sum_for_integer_flux() {
    let c = cfg(2.0, 1.5, 1.0);
    let w = PartialWaves::new(c, TOL).unwrap();
    let n = 8 * (w.truncation().m + 1);
    let q = cross_section_by_quadrature(&c, n, TOL).unwrap();
    let s = total_cross_section(&c, TOL).unwrap();
    assert!(((q - s) / s).abs() < 1e-10);
    assert!(matches!(
        cross_section_by_quadrature(&cfg(20.0, 2.0, 0.0), 64, TOL),
        Err(Error::QuadratureUnresolved { .. })
    ));
}

#[test]
fn fractional_flux_has_no_forward_amplitude() {
    let c = cfg(1.0, 1.0, 0.25);
    assert_eq!(solenoid_amplitude(&c, 0.0, TOL), Err(Error::ForwardSingularity));
    assert_eq!(total_cross_section(&c, TOL).unwrap(), f64::INFINITY);
    assert_eq!(cross_section_by_quadrature(&c, 256, TOL).unwrap(), f64::INFINITY);
    // near the forward direction |f|² grows like θ⁻²
    let d1 = differential_cross_section(&c, 1e-3, TOL).unwrap();
    let d2 = differential_cross_section(&c, 1e-4, TOL).unwrap();
    assert!((d2 / d1 - 100.0).abs() < 0.5);
}

#[test]
fn continuous_in_flux_near_zero() {
    for &theta in &[-2.0, 0.5, 3.0] {
        let f0 = solenoid_amplitude(&cfg(1.0, 1.0, 0.0), theta, TOL).unwrap();
        let f1 = solenoid_amplitude(&cfg(1.0, 1.0, 1e-8), theta, TOL).unwrap();
        assert!(rel(f1, f0) < 1e-4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flux_period_one(k in 0.1f64..5.0, a in 0.1f64..3.0, alpha in -3.0f64..3.0,
                       theta in -3.1f64..3.1) {
        prop_assume!(theta.abs() > 1e-3);
        let f = solenoid_amplitude(&cfg(k, a, alpha), theta, TOL).unwrap();
        let g = solenoid_amplitude(&cfg(k, a, alpha + 1.0), theta, TOL).unwrap();
        let want = Complex64::from_polar(1.0, -theta) * f;
        prop_assert!(rel(g, want) < 1e-11, "{} vs {}", g, want);
    }

    #[test]
    fn mirror_symmetry(k in 0.1f64..5.0, a in 0.1f64..3.0, alpha in -3.0f64..3.0,
                       theta in 0.01f64..3.1) {
        // α → −α is a reflection θ → −θ
        let d = differential_cross_section(&cfg(k, a, alpha), theta, TOL).unwrap();
        let e = differential_cross_section(&cfg(k, a, -alpha), -theta, TOL).unwrap();
        prop_assert!((d - e).abs() <= 1e-11 * d);
    }

    #[test]
    fn unitarity_of_channels(x in 0.01f64..200.0, alpha in -5.0f64..5.0) {
        let w = PartialWaves::new(cfg(1.0, x, alpha), TOL).unwrap();
        // |1 − T_m| = 1 on the positive side, and the same for e^{2iπα} − R_m
        let e2 = Complex64::from_polar(1.0, 2.0 * PI * alpha);
        for &(m, t) in w.channel_terms() {
            let s = if m as f64 + alpha >= 0.0 { 1.0 - t } else { e2 - t };
            prop_assert!((s.norm() - 1.0).abs() < 1e-13);
        }
    }
}
