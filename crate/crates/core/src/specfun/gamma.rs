use super::trig::sin_pi;
use crate::error::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Taylor coefficients of 1/Γ(1+z) about z = 0.
pub(crate) const RGAMMA_TAYLOR: [f64; 31] = [
    1.0,
    5.772_156_649_015_328_606_1e-1,
    -6.558_780_715_202_538_810_8e-1,
    -4.200_263_503_409_523_552_9e-2,
    1.665_386_113_822_914_895e-1,
    -4.219_773_455_554_433_674_8e-2,
    -9.621_971_527_876_973_562_1e-3,
    7.218_943_246_663_099_542_4e-3,
    -1.165_167_591_859_065_112_1e-3,
    -2.152_416_741_149_509_728_2e-4,
    1.280_502_823_881_161_861_5e-4,
    -2.013_485_478_078_823_865_6e-5,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
    -2.298_745_684_435_370_206_6e-19,
    1.714_406_321_927_337_433_4e-20,
    1.337_351_730_493_693_114_9e-22,
];

fn lanczos_sum(z: f64) -> f64 {
    // z is the shifted argument x - 1
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// Γ(x) for real x.
///
/// Lanczos approximation (g = 7, nine terms) with the reflection formula
/// below 1/2. Integer arguments up to 23 are returned as exact factorials.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidParameter("gamma of NaN".into()));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole(x));
    }
    if x == x.floor() && x <= 23.0 {
        let mut f = 1.0;
        for i in 2..x as u32 {
            f *= i as f64;
        }
        return Ok(f);
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let g = gamma(1.0 - x)?;
        return Ok(PI / (s * g));
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let a = lanczos_sum(z);
    // split the power to keep t^(z+1/2) finite up to x ≈ 171
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * a)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos sum in its good range
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// The four Temme auxiliaries for |μ| ≤ 1/2:
/// (Γ1, Γ2, 1/Γ(1+μ), 1/Γ(1−μ)) with
/// Γ1 = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ) and Γ2 = (1/Γ(1−μ) + 1/Γ(1+μ))/2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut even = 0.0;
    let mut odd_over_mu = 0.0;
    let mu2 = mu * mu;
    let mut p = 1.0;
    for k in (0..RGAMMA_TAYLOR.len()).step_by(2) {
        even += RGAMMA_TAYLOR[k] * p;
        if k + 1 < RGAMMA_TAYLOR.len() {
            odd_over_mu += RGAMMA_TAYLOR[k + 1] * p;
        }
        p *= mu2;
    }
    let gampl = even + mu * odd_over_mu;
    let gammi = even - mu * odd_over_mu;
    (-odd_over_mu, even, gampl, gammi)
}
