use super::gamma::ln_gamma_pos;
use crate::error::domain;
use crate::Result;

fn check_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(domain!("Jacobi parameters must exceed -1, got ({alpha}, {beta})"));
    }
    Ok(())
}

/// Coefficients of `P_n = (A t + B) P_{n−1} − C P_{n−2}` for `n ≥ 2`.
#[inline]
pub(crate) fn recurrence_coeffs(n: usize, alpha: f64, beta: f64) -> (f64, f64, f64) {
    let n = n as f64;
    let s = 2.0 * n + alpha + beta;
    let denom = 2.0 * n * (n + alpha + beta) * (s - 2.0);
    let a = (s - 1.0) * s * (s - 2.0) / denom;
    let b = (s - 1.0) * (alpha * alpha - beta * beta) / denom;
    let c = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * s / denom;
    (a, b, c)
}

#[inline]
pub(crate) fn first_degree(alpha: f64, beta: f64, t: f64) -> f64 {
    (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (t - 1.0)
}

/// Jacobi polynomial `P_n^{(α,β)}(t)` by the three-term recurrence.
pub fn jacobi_eval(n: usize, alpha: f64, beta: f64, t: f64) -> Result<f64> {
    check_params(alpha, beta)?;
    if !(-1.0..=1.0).contains(&t) {
        return Err(domain!("Jacobi argument must lie in [-1, 1], got {t}"));
    }
    Ok(jacobi_unchecked(n, alpha, beta, t))
}

pub(crate) fn jacobi_unchecked(n: usize, alpha: f64, beta: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = first_degree(alpha, beta, t);
    for k in 2..=n {
        let (a, b, c) = recurrence_coeffs(k, alpha, beta);
        let next = (a * t + b) * cur - c * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n^{(α,β)}(1) = Γ(α+n+1) / (Γ(n+1) Γ(α+1))`.
pub fn jacobi_at_one(n: usize, alpha: f64, _beta: f64) -> Result<f64> {
    let top = alpha + n as f64 + 1.0;
    if top <= 0.0 || alpha + 1.0 <= 0.0 {
        return Err(domain!("jacobi_at_one requires α+1 > 0 and α+n+1 > 0, got α={alpha}, n={n}"));
    }
    Ok(libm::exp(
        ln_gamma_pos(top) - ln_gamma_pos(n as f64 + 1.0) - ln_gamma_pos(alpha + 1.0),
    ))
}

/// Monic recurrence data of the Jacobi weight: diagonal `a_k` and
/// off-diagonal squares `b_k` (`b_0` unused) for `k < m`.
pub(crate) fn monic_recurrence(m: usize, alpha: f64, beta: f64) -> (alloc::vec::Vec<f64>, alloc::vec::Vec<f64>) {
    let mut diag = alloc::vec::Vec::with_capacity(m);
    let mut off = alloc::vec::Vec::with_capacity(m);
    let ab = alpha + beta;
    for k in 0..m {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let a = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / (s * (s + 2.0))
        };
        diag.push(a);
        let b = match k {
            0 => 0.0,
            1 => 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)),
            _ => {
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                    / (s * s * (s + 1.0) * (s - 1.0))
            }
        };
        off.push(b);
    }
    (diag, off)
}
