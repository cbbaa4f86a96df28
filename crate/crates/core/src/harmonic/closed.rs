//! Closed forms behind the Jacobi square integral: `T_n`, the polynomial `W_n`
//! and its product form.

use core::ops::Neg;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

use crate::error::domain;
use crate::specfun::{gauss_jacobi, jacobi_unchecked, log_gamma_signed, rising_factorial, falling_factorial};
use crate::{Error, Result};

/// `T_n(α, β) = (α+1)_n (β+1)_n / (α+β+3/2)_n`, accumulated as a product of
/// ratios so it stays finite for large `n`.
pub fn t_closed(n: usize, alpha: f64, beta: f64) -> f64 {
    (0..n)
        .map(|k| {
            let k = k as f64;
            (alpha + 1.0 + k) * (beta + 1.0 + k) / (alpha + beta + 1.5 + k)
        })
        .product()
}

/// `T_n` over any field, e.g. exact rationals.
pub fn t_closed_exact<T>(n: usize, alpha: &T, beta: &T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let one = T::one();
    let three_halves = T::from_f64(1.5).expect("1.5 is representable");
    rising_factorial(&(alpha.clone() + one.clone()), n) * rising_factorial(&(beta.clone() + one), n)
        / rising_factorial(&(alpha.clone() + beta.clone() + three_halves), n)
}

fn int<T: FromPrimitive>(k: usize) -> T {
    T::from_usize(k).expect("small integers are representable")
}

/// The alternating sum
/// `W_n = Σ_{k=0}^{2n} (−1)^{n+k}/k! ⟨2n⟩_k ⟨α+n⟩_k ⟨β+n⟩_{2n−k} (2α+1)_{2n−k} (2β+1)_k`,
/// evaluated term by term. Exact when `T` is a rational type.
pub fn w_sum<T>(n: usize, alpha: &T, beta: &T) -> T
where
    T: Clone + Num + FromPrimitive + Neg<Output = T>,
{
    let one = T::one();
    let two = int::<T>(2);
    let a_n = alpha.clone() + int::<T>(n);
    let b_n = beta.clone() + int::<T>(n);
    let two_a = two.clone() * alpha.clone() + one.clone();
    let two_b = two * beta.clone() + one.clone();
    let mut total = T::zero();
    let mut k_fact = one;
    for k in 0..=2 * n {
        if k > 0 {
            k_fact = k_fact * int::<T>(k);
        }
        let term = falling_factorial(&int::<T>(2 * n), k)
            * falling_factorial(&a_n, k)
            * falling_factorial(&b_n, 2 * n - k)
            * rising_factorial(&two_a, 2 * n - k)
            * rising_factorial(&two_b, k)
            / k_fact.clone();
        if (n + k).is_multiple_of(2) {
            total = total + term;
        } else {
            total = total - term;
        }
    }
    total
}

/// Product form of `W_n`: `(1/2)_n 2^{2n} (α+1)_n (β+1)_n (α+β+1)_n`.
///
/// The factor `(1/2)_n` comes from the constant `(−1)^n Γ(1/2)/Γ(1/2 − n)` of
/// the reduction to Watson's sum; without it the identity already fails at
/// `n = 1, α = β = 0` (2 against 4).
pub fn w_closed<T>(n: usize, alpha: &T, beta: &T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let half = T::from_f64(0.5).expect("0.5 is representable");
    rising_factorial(&half, n) * w_closed_printed(n, alpha, beta)
}

/// `2^{2n} (α+1)_n (β+1)_n (α+β+1)_n`, the product form without `(1/2)_n`.
/// Kept so the verification suite can show that it does not match [`w_sum`].
pub fn w_closed_printed<T>(n: usize, alpha: &T, beta: &T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let one = T::one();
    let mut pow = T::one();
    for _ in 0..2 * n {
        pow = pow * int::<T>(2);
    }
    pow * rising_factorial(&(alpha.clone() + one.clone()), n)
        * rising_factorial(&(beta.clone() + one.clone()), n)
        * rising_factorial(&(alpha.clone() + beta.clone() + one), n)
}

/// How [`jacobi_sq_integral`] is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralRoute {
    /// `2^{2α+2β+1} (1/2)_n/(n!)² · B(2α+1, 2β+1) · T_n(α, β)`.
    Closed,
    /// Gauss–Jacobi with `n + 2` nodes of the `(2α, 2β)` rule.
    Quadrature,
}

/// `2^{2α+2β+1} B(2α+1, 2β+1)`, the Euler integral `∫(1−t)^{2α}(1+t)^{2β} dt`,
/// continued to real arguments through signed log-gamma.
fn euler_integral(alpha: f64, beta: f64) -> Result<f64> {
    let (la, sa) = log_gamma_signed(2.0 * alpha + 1.0)?;
    let (lb, sb) = log_gamma_signed(2.0 * beta + 1.0)?;
    let (lab, sab) = log_gamma_signed(2.0 * alpha + 2.0 * beta + 2.0)?;
    let ln2 = core::f64::consts::LN_2 * (2.0 * alpha + 2.0 * beta + 1.0);
    Ok(sa * sb * sab * libm::exp(ln2 + la + lb - lab))
}

/// `∫_{−1}^{1} (P_n^{(α,β)}(t))² (1−t)^{2α} (1+t)^{2β} dt`.
///
/// The closed route is the analytic continuation and accepts any `(α, β)` away
/// from gamma poles; the quadrature route needs the integral to converge,
/// `α, β > −1/2`.
pub fn jacobi_sq_integral(n: usize, alpha: f64, beta: f64, route: IntegralRoute) -> Result<f64> {
    match route {
        IntegralRoute::Closed => {
            let ratio: f64 = (0..n)
                .map(|k| {
                    let k = k as f64;
                    (k + 0.5) * (alpha + 1.0 + k) * (beta + 1.0 + k)
                        / ((k + 1.0) * (k + 1.0) * (alpha + beta + 1.5 + k))
                })
                .product();
            Ok(euler_integral(alpha, beta)? * ratio)
        }
        IntegralRoute::Quadrature => {
            if !(alpha > -0.5 && beta > -0.5) {
                return Err(domain!(
                    "the integral converges only for α, β > -1/2, got ({alpha}, {beta})"
                ));
            }
            let rule = gauss_jacobi(n + 2, 2.0 * alpha, 2.0 * beta)?;
            Ok(rule.integrate(|t| {
                let p = jacobi_unchecked(n, alpha, beta, t);
                p * p
            }))
        }
    }
}

/// `2^{2α+2β+1}/(n!)² · B(2α+1, 2β+1) · W_n / (2α+2β+2)_{2n}`, with `W_n`
/// summed exactly from the binary values of `α` and `β`.
pub fn lemma51_value(n: usize, alpha: f64, beta: f64) -> Result<f64> {
    let a = BigRational::from_float(alpha).ok_or_else(|| domain!("non-finite α"))?;
    let b = BigRational::from_float(beta).ok_or_else(|| domain!("non-finite β"))?;
    let w = w_sum(n, &a, &b);
    let two = BigRational::from_integer(2.into());
    let poch = rising_factorial(&(two.clone() * &a + two.clone() * &b + two), 2 * n);
    let fact: BigRational = rising_factorial(&BigRational::from_integer(1.into()), n);
    let q = w / (poch * fact.clone() * fact);
    let q = q
        .to_f64()
        .ok_or_else(|| Error::Domain("W_n ratio is not representable".into()))?;
    Ok(euler_integral(alpha, beta)? * q)
}
