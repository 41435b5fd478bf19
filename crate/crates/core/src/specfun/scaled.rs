//! Extended-range reals `m * 2^e`.
//!
//! Bessel functions of order far above the argument leave the f64 range
//! (J_2000(10) is about 1e-4338). The partial-wave layer only ever needs
//! ratios and products of such values, so they are carried with a separate
//! binary exponent and collapsed to f64 at the very end.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    m: f64,
    e: i64,
}

/// Exact power of two for |e| <= 1000.
#[inline]
fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// Split x into (m, e) with |m| in [0.5, 1) and x = m * 2^e.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        let (m, e) = frexp(x * pow2(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff_u64 << 52)) | (1022_u64 << 52));
    (m, biased - 1022)
}

/// m * 2^e with saturation to 0 or ±inf.
fn ldexp(m: f64, e: i64) -> f64 {
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    if e > 2100 {
        return m.signum() * f64::INFINITY;
    }
    if e < -2200 {
        return m.signum() * 0.0;
    }
    let mut x = m;
    let mut e = e;
    while e > 1000 {
        x *= pow2(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= pow2(-1000);
        e += 1000;
    }
    x * pow2(e)
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { m: 0.0, e: 0 };

    pub fn new(x: f64, e: i64) -> Self {
        let (m, e0) = frexp(x);
        if m == 0.0 {
            return Self::ZERO;
        }
        Scaled { m, e: e0 + e }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.m, self.e)
    }

    pub fn is_zero(self) -> bool {
        self.m == 0.0
    }

    pub fn neg(self) -> Self {
        Scaled {
            m: -self.m,
            e: self.e,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        Self::new(self.m * o.m, self.e + o.e)
    }

    pub fn mul_f64(self, x: f64) -> Self {
        Self::new(self.m * x, self.e)
    }

    pub fn div(self, o: Self) -> Self {
        if o.m == 0.0 {
            return Self::from_f64(self.m / 0.0);
        }
        Self::new(self.m / o.m, self.e - o.e)
    }

    pub fn add(self, o: Self) -> Self {
        if self.m == 0.0 {
            return o;
        }
        if o.m == 0.0 {
            return self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let shift = small.e - big.e;
        if shift < -1100 {
            return big;
        }
        Self::new(big.m + ldexp(small.m, shift), big.e)
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }
}

#[cfg(test)]
impl Scaled {
    /// Natural log of the magnitude; -inf for zero.
    pub fn ln_abs(self) -> f64 {
        if self.m == 0.0 {
            return f64::NEG_INFINITY;
        }
        self.m.abs().ln() + self.e as f64 * std::f64::consts::LN_2
    }

    pub fn signum(self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else {
            self.m.signum()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_preserves_bits() {
        for &x in &[1.0, -3.5, 1e-310, 6.02e23, -1e300, 0.1] {
            assert_eq!(Scaled::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn products_leave_the_f64_range_and_come_back() {
        let big = Scaled::from_f64(1e300);
        let huge = big.mul(big).mul(big);
        assert!(huge.to_f64().is_infinite());
        let back = huge.div(big).div(big);
        assert!((back.to_f64() - 1e300).abs() < 1e285);
        assert!((huge.ln_abs() - 900.0 * 10f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn saturates_gracefully() {
        let tiny = Scaled::new(1.0, -5000);
        assert_eq!(tiny.to_f64(), 0.0);
        assert_eq!(Scaled::new(-1.0, 5000).to_f64(), f64::NEG_INFINITY);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = Scaled::new(1.0, 2000);
        let b = Scaled::new(1.0, 1999);
        let s = a.add(b).div(Scaled::new(1.0, 1999));
        assert_eq!(s.to_f64(), 3.0);
        assert_eq!(a.sub(a).to_f64(), 0.0);
    }
}
