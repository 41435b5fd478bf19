//! Compensated (Neumaier) summation.

use num_complex::Complex64;

/// Running sum with a Neumaier correction term.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of complex terms, real and imaginary parts separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

pub fn sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = NeumaierSum::new();
    xs.into_iter().for_each(|x| s.add(x));
    s.value()
}

pub fn sum_complex(zs: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let mut s = ComplexSum::new();
    zs.into_iter().for_each(|z| s.add(z));
    s.value()
}

/// The angular-momentum indices of a window `lo..=hi` in the order
/// 0, −1, +1, −2, +2, … (indices outside the window are skipped).
pub fn interleaved(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    let reach = lo.abs().max(hi.abs());
    std::iter::once(0)
        .chain((1..=reach).flat_map(|n| [-n, n]))
        .filter(move |&m| m >= lo && m <= hi)
}
