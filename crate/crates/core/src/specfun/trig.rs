//! sin(πx) and cos(πx) with exact zeros at integers and half-integers.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Returns (sin πx, cos πx).
///
/// The argument is reduced modulo 2 exactly, so `sin_cos_pi(3.0)` is
/// `(0.0, -1.0)` rather than the ~1e-16 residue of `(3π).sin()`.
pub fn sin_cos_pi(x: f64) -> (f64, f64) {
    if !x.is_finite() {
        return (f64::NAN, f64::NAN);
    }
    let r = x.rem_euclid(2.0);
    let n = (2.0 * r).round();
    let f = r - 0.5 * n;
    let (s, c) = (PI * f).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

pub fn sin_pi(x: f64) -> f64 {
    sin_cos_pi(x).0
}

pub fn cos_pi(x: f64) -> f64 {
    sin_cos_pi(x).1
}

/// e^{iπx}.
pub fn cis_pi(x: f64) -> Complex64 {
    let (s, c) = sin_cos_pi(x);
    Complex64::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_at_lattice_points() {
        for n in -20..=20 {
            let (s, c) = sin_cos_pi(n as f64);
            assert_eq!(s, 0.0);
            assert_eq!(c, if n % 2 == 0 { 1.0 } else { -1.0 });
            let (s, c) = sin_cos_pi(n as f64 + 0.5);
            assert_eq!(c, 0.0);
            assert_eq!(s.abs(), 1.0);
        }
    }

    #[test]
    fn agrees_with_libm_elsewhere() {
        for i in 0..1000 {
            let x = -7.3 + i as f64 * 0.0137;
            let (s, c) = sin_cos_pi(x);
            assert!((s - (PI * x).sin()).abs() < 1e-14);
            assert!((c - (PI * x).cos()).abs() < 1e-14);
        }
    }
}
