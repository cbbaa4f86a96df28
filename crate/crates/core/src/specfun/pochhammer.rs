use core::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

/// Rising factorial `(a)_k = a(a+1)…(a+k−1)` over any ring.
pub fn rising_factorial<T>(a: &T, k: usize) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

/// Falling factorial `⟨a⟩_k = a(a−1)…(a−k+1)` over any ring.
pub fn falling_factorial<T>(a: &T, k: usize) -> T
where
    T: Clone + One + Sub<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc = acc * factor.clone();
        factor = factor - T::one();
    }
    acc
}

/// `(a)_k` in floating point.
pub fn rising(a: f64, k: usize) -> f64 {
    rising_factorial(&a, k)
}

/// `⟨a⟩_k` in floating point.
pub fn falling(a: f64, k: usize) -> f64 {
    falling_factorial(&a, k)
}

/// `⟨a⟩_k` computed through the duality `(−1)^k (−a)_k`.
pub fn falling_via_rising<T>(a: &T, k: usize) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let r = rising_factorial(&(-a.clone()), k);
    if k.is_multiple_of(2) {
        r
    } else {
        -r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn examples() {
        assert_eq!(rising(7.25, 0), 1.0);
        assert_eq!(rising(3.0, 4), 360.0);
        assert_eq!(rising(0.5, 2), 0.75);
        assert_eq!(falling(-1.5, 0), 1.0);
        assert_eq!(falling(5.0, 2), 20.0);
        assert_eq!(falling(2.0, 3), 0.0);
    }

    #[test]
    fn exact_rational_values() {
        assert_eq!(rising_factorial(&q(1, 2), 3), q(15, 8));
        assert_eq!(falling_factorial(&q(1, 3), 2), q(-2, 9));
    }

    proptest! {
        #[test]
        fn duality_is_exact(num in -40i64..40, den in 1i64..9, k in 0usize..12) {
            let a = q(num, den);
            prop_assert_eq!(falling_factorial(&a, k), falling_via_rising(&a, k));
        }

        #[test]
        fn rising_splits(num in -30i64..30, den in 1i64..7, m in 0usize..6, n in 0usize..6) {
            // (a)_{m+n} = (a)_m (a+m)_n
            let a = q(num, den);
            let shifted = a.clone() + BigRational::from_integer(BigInt::from(m as i64));
            prop_assert_eq!(rising_factorial(&a, m + n), rising_factorial(&a, m) * rising_factorial(&shifted, n));
        }
    }
}
