use super::gamma::log_beta;
use crate::error::domain;
use crate::Result;

const MAX_ITER: usize = 500;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Continued fraction (modified Lentz) on whichever side of the mean
/// `(a+1)/(a+b+2)` converges fastest.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain!("reg_inc_beta requires x in [0, 1], got {x}"));
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(domain!("reg_inc_beta requires a, b > 0, got ({a}, {b})"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = a * libm::log(x) + b * libm::log1p(-x) - log_beta(a, b)?;
    let front = libm::exp(ln_front);
    let value = if x < (a + 1.0) / (a + b + 2.0) {
        front * continued_fraction(x, a, b) / a
    } else {
        1.0 - front * continued_fraction(1.0 - x, b, a) / b
    };
    Ok(value.clamp(0.0, 1.0))
}

fn continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn endpoints_and_uniform() {
        assert_eq!(reg_inc_beta(0.0, 2.0, 3.0).unwrap(), 0.0);
        assert_eq!(reg_inc_beta(1.0, 2.0, 3.0).unwrap(), 1.0);
        assert!((reg_inc_beta(0.3, 1.0, 1.0).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn symmetric_half() {
        assert!((reg_inc_beta(0.5, 0.5, 0.5).unwrap() - 0.5).abs() < 1e-14);
        for &a in &[0.5, 1.5, 4.0, 8.0] {
            for &x in &[0.1, 0.35, 0.8] {
                let s = reg_inc_beta(x, a, a).unwrap() + reg_inc_beta(1.0 - x, a, a).unwrap();
                assert!((s - 1.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn arcsine_law() {
        for &x in &[0.01, 0.2, 0.5, 0.77, 0.99] {
            let exact = 2.0 / PI * libm::asin(libm::sqrt(x));
            assert!((reg_inc_beta(x, 0.5, 0.5).unwrap() - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn quarter_one_half_against_quadrature() {
        // I_{1/4}(1, 1/2) = 1 − √(1 − 1/4), by integrating (1−s)^{−1/2}/B(1,1/2) directly.
        let closed = 1.0 - libm::sqrt(0.75);
        // independent composite Simpson on the defining integral (smooth on [0, 1/4])
        let n = 2000;
        let h = 0.25 / n as f64;
        let f = |s: f64| 0.5 / libm::sqrt(1.0 - s);
        let mut acc = f(0.0) + f(0.25);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        let simpson = acc * h / 3.0;
        assert!((simpson - closed).abs() < 1e-13);
        assert!((reg_inc_beta(0.25, 1.0, 0.5).unwrap() - simpson).abs() < 1e-12);
        assert!((reg_inc_beta(0.25, 1.0, 0.5).unwrap() - 0.133_974_596_215_561_35).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(reg_inc_beta(-0.1, 1.0, 1.0).is_err());
        assert!(reg_inc_beta(1.1, 1.0, 1.0).is_err());
        assert!(reg_inc_beta(0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn monotone_in_x() {
        for (a, b) in [(0.5, 0.5), (2.0, 1.0), (8.0, 4.0), (1.5, 1.5)] {
            let mut prev = 0.0;
            for i in 0..=2000 {
                let v = reg_inc_beta(i as f64 / 2000.0, a, b).unwrap();
                assert!(v >= prev - 1e-15 && (0.0..=1.0).contains(&v));
                prev = v;
            }
        }
    }
}
