//! Log-gamma, signed gamma and beta functions.
//!
//! `ln Γ` uses the Lanczos approximation (g = 607/128, 15 terms) with the
//! reflection formula below 1/2. Around the zeros of `ln Γ` at 1 and 2 the
//! Lanczos sum loses relative accuracy, so a Taylor expansion in `ζ(k) − 1`
//! takes over there.

use core::f64::consts::PI;

use crate::error::domain;
use crate::Result;

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// `ζ(k) − 1` for `k = 2..=21`.
#[allow(clippy::excessive_precision)]
const ZETA_MINUS_ONE: [f64; 20] = [
    0.644_934_066_848_226_4,
    0.202_056_903_159_594_3,
    0.082_323_233_711_138_19,
    0.036_927_755_143_369_93,
    0.017_343_061_984_449_14,
    0.008_349_277_381_922_827,
    0.004_077_356_197_944_339,
    0.002_008_392_826_082_214,
    0.000_994_575_127_818_085_3,
    0.000_494_188_604_119_464_6,
    0.000_246_086_553_308_048_3,
    0.000_122_713_347_578_489_1,
    6.124_813_505_870_483e-5,
    3.058_823_630_702_049e-5,
    1.528_225_940_865_187e-5,
    7.637_197_637_899_762e-6,
    3.817_293_264_999_840e-6,
    1.908_212_716_553_939e-6,
    9.539_620_338_727_961e-7,
    4.769_329_867_878_065e-7,
];

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln Γ(1 + z)` for small `|z|`.
fn ln_gamma_1p(z: f64) -> f64 {
    let mut acc = 0.0;
    let mut zk = -z;
    for (i, c) in ZETA_MINUS_ONE.iter().enumerate() {
        zk *= -z;
        acc += c * zk / (i + 2) as f64;
    }
    acc + z * (1.0 - EULER_GAMMA) - libm::log1p(z)
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    // x >= 1/2
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * libm::log(t) - t + libm::log(series)
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain!("log_gamma requires a positive finite argument, got {x}"));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if (x - 1.0).abs() <= 0.25 {
        ln_gamma_1p(x - 1.0)
    } else if (x - 2.0).abs() <= 0.25 {
        libm::log1p(x - 2.0) + ln_gamma_1p(x - 2.0)
    } else if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx), with 0 < x < 1/2 so every factor is positive.
        libm::log(PI / libm::sin(PI * x)) - ln_gamma_pos(1.0 - x)
    } else {
        ln_gamma_lanczos(x)
    }
}

/// `(ln |Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub fn log_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(domain!("log_gamma_signed requires a finite argument, got {x}"));
    }
    if x > 0.0 {
        return Ok((ln_gamma_pos(x), 1.0));
    }
    if x == libm::floor(x) {
        return Err(domain!("gamma has a pole at {x}"));
    }
    // Γ(x) = π / (sin(πx) Γ(1−x)), 1 − x > 1.
    let s = sin_pi(x);
    let sign = if s < 0.0 { -1.0 } else { 1.0 };
    Ok((libm::log(PI / s.abs()) - ln_gamma_pos(1.0 - x), sign))
}

/// `sin(πx)` with exact zeros at the integers and argument reduction mod 2.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * libm::floor(x * 0.5);
    if r == libm::floor(r) {
        return 0.0;
    }
    if r < 0.5 {
        libm::sin(PI * r)
    } else if r < 1.5 {
        -libm::sin(PI * (r - 1.0))
    } else {
        libm::sin(PI * (r - 2.0))
    }
}

/// `Γ(x)` for real `x` away from the poles.
pub fn gamma(x: f64) -> Result<f64> {
    let (lg, s) = log_gamma_signed(x)?;
    Ok(s * libm::exp(lg))
}

/// `ln B(a, b)` for `a, b > 0`.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(domain!("beta requires positive arguments, got ({a}, {b})"));
    }
    Ok(ln_gamma_pos(a) + ln_gamma_pos(b) - ln_gamma_pos(a + b))
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)` for `a, b > 0`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    log_beta(a, b).map(libm::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_and_half() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-16);
        let half = 0.5 * libm::log(PI);
        assert!(rel(log_gamma(0.5).unwrap(), half) < 1e-14);
        assert!((half - 0.572_364_942_9).abs() < 1e-10);
    }

    #[test]
    fn seven_and_a_half_by_recursion() {
        // Γ(7.5) = Γ(0.5) · Π_{k=0}^{6} (k + 1/2)
        let mut lg = 0.5 * libm::log(PI);
        for k in 0..7 {
            lg += libm::log(k as f64 + 0.5);
        }
        assert!(rel(log_gamma(7.5).unwrap(), lg) < 1e-14);
    }

    #[test]
    fn integer_factorials() {
        let mut fact = 1.0f64;
        for n in 1..=30u32 {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            let lg = log_gamma(n as f64).unwrap();
            let expect = libm::log(fact);
            if n > 2 {
                assert!(rel(lg, expect) < 1e-14, "n={n}: {lg} vs {expect}");
            } else {
                assert!(lg.abs() < 1e-16);
            }
        }
    }

    /// 40-digit reference values of ln Γ at the exact binary value of each abscissa, covering both sides of every branch switch.
    #[allow(clippy::excessive_precision)]
    const REFERENCE: [(f64, f64); 28] = [
        (0.001, 6.9071788853838536825),
        (0.01, 4.5994798780420217225),
        (0.1, 2.2527126517342059599),
        (0.3, 1.0957979948180755217),
        (0.49, 0.59224962933526703786),
        (0.6, 0.39823385806923489962),
        (0.74, 0.21426754630508069562),
        (0.76, 0.19254856099358999637),
        (0.9, 0.066376239734742971189),
        (0.99, 0.0058548067647097814532),
        (0.999999, 5.7721648738556523794e-7),
        (1.000001, -5.7721484238741466506e-7),
        (1.1, -0.049872441259839724148),
        (1.24, -0.095937212174083936253),
        (1.26, -0.10048672543554801435),
        (1.5, -0.12078223763524522235),
        (1.74, -0.08683754647884091863),
        (1.76, -0.081888284708170292826),
        (1.9, -0.038984275923083330039),
        (1.999, -0.00042246180069210728418),
        (2.001, 0.00042310673480011699119),
        (2.2, 0.096947466790638776492),
        (2.26, 0.13062499552783861492),
        (3.7, 1.4280723266653879219),
        (10.5, 13.940625219403763633),
        (55.5, 166.32150615984036914),
        (123.4, 469.33609744219055844),
        (999.0, 5898.3136684305326583),
    ];

    #[test]
    fn relative_accuracy_on_reference_grid() {
        for &(x, expect) in &REFERENCE {
            let got = log_gamma(x).unwrap();
            assert!(rel(got, expect) <= 1e-13, "x={x}: {got} vs {expect}, rel {}", rel(got, expect));
        }
    }

    #[test]
    fn reflection_and_negative_arguments() {
        // Γ(-1/2) = -2√π
        let g = gamma(-0.5).unwrap();
        assert!(rel(g, -2.0 * libm::sqrt(PI)) < 1e-14);
        // Γ(-3/2) = 4√π/3
        assert!(rel(gamma(-1.5).unwrap(), 4.0 * libm::sqrt(PI) / 3.0) < 1e-14);
        assert!(gamma(-2.0).is_err());
        assert!(gamma(0.0).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
        assert!(beta(0.0, 1.0).is_err());
    }

    #[test]
    fn beta_examples() {
        assert!((beta(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(rel(beta(0.5, 0.5).unwrap(), PI) < 1e-14);
        assert!(rel(beta(2.5, 1.0).unwrap(), 0.4) < 1e-14);
    }

    #[test]
    fn duplication_formula() {
        for &z in &[0.3, 1.0, 2.7, 10.0] {
            let lhs = log_gamma(2.0 * z).unwrap();
            let rhs = log_gamma(z).unwrap() + log_gamma(z + 0.5).unwrap()
                + (2.0 * z - 1.0) * core::f64::consts::LN_2
                - 0.5 * libm::log(PI);
            assert!((lhs - rhs).abs() <= 1e-12, "z={z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn reflection_formulas() {
        for &z in &[0.1, 0.37, 0.5, 0.81, 1.3, 2.45, -0.7, -1.2] {
            if z != libm::floor(z) && (1.0 - z) != libm::floor(1.0 - z) {
                let lhs = gamma(1.0 - z).unwrap() * gamma(z).unwrap();
                assert!(rel(lhs, PI / libm::sin(PI * z)) < 1e-13, "sine form at {z}");
            }
            let c = libm::cos(PI * z);
            if c.abs() > 1e-3 {
                let lhs = gamma(0.5 - z).unwrap() * gamma(0.5 + z).unwrap();
                assert!(rel(lhs, PI / c) < 1e-13, "cosine form at {z}");
            }
        }
    }
}
