//! `3F2` at unit argument and Watson's closed form.

use alloc::format;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gamma::log_gamma_signed;
use crate::error::domain;
use crate::{Error, Result};

/// Parameters of `3F2(a, b, c; d, e; 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp3F2Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl Hyp3F2Params {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        Self { a, b, c, d, e }
    }

    /// Parameters of the left side of Watson's theorem:
    /// `3F2(a, b, c; (a+b+1)/2, 2c; 1)`.
    pub fn watson(a: f64, b: f64, c: f64) -> Self {
        Self::new(a, b, c, 0.5 * (a + b + 1.0), 2.0 * c)
    }

    /// Number of retained terms minus one, when some numerator is `−K`.
    fn termination(&self) -> Option<usize> {
        [self.a, self.b, self.c]
            .into_iter()
            .filter(|&p| p <= 0.0 && p == libm::floor(p) && p > -1e9)
            .map(|p| (-p) as usize)
            .min()
    }
}

/// Neumaier compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

const DIRECT_TERMS: usize = 4096;
const RICHARDSON_BASE: usize = 1024;
const RICHARDSON_LEVELS: usize = 5;

/// `3F2(a, b, c; d, e; 1)` in floating point.
///
/// Terminating series are summed exactly term by term (compensated). A
/// convergent nonterminating series is summed directly until the terms drop
/// below `1e−16` of the partial sum; slowly converging ones (terms decaying like
/// `k^{−1−s}`, `s = d+e−a−b−c`) are extrapolated from partial sums at
/// `K, 2K, …, 16K` using the tail expansion `K^{−s}(c₀ + c₁/K + …)`.
pub fn hyp3f2_unit(p: &Hyp3F2Params) -> Result<f64> {
    let Hyp3F2Params { a, b, c, d, e } = *p;
    if [a, b, c, d, e].iter().any(|x| !x.is_finite()) {
        return Err(domain!("3F2 parameters must be finite: {p:?}"));
    }
    let term_ratio = |k: f64| (a + k) * (b + k) * (c + k) / ((d + k) * (e + k) * (k + 1.0));

    if let Some(last) = p.termination() {
        for den in [d, e] {
            if is_nonpositive_integer(den) && ((-den) as usize) < last {
                return Err(domain!(
                    "denominator parameter {den} vanishes before the series terminates at k={last}"
                ));
            }
        }
        let mut sum = CompensatedSum::default();
        let mut term = 1.0;
        sum.add(term);
        for k in 0..last {
            term *= term_ratio(k as f64);
            sum.add(term);
        }
        return Ok(sum.value());
    }

    for den in [d, e] {
        if is_nonpositive_integer(den) {
            return Err(domain!("denominator parameter {den} is a nonpositive integer"));
        }
    }
    let excess = d + e - a - b - c;
    if !(excess > 0.0) {
        return Err(domain!("3F2(1) diverges: d+e-a-b-c = {excess} <= 0"));
    }

    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    let mut k = 0usize;
    while k < DIRECT_TERMS {
        term *= term_ratio(k as f64);
        k += 1;
        sum.add(term);
        if term.abs() < 1e-16 * sum.value().abs() && k > 8 {
            return Ok(sum.value());
        }
    }

    // Continue summing and record partial sums S_K at K = base·2^j.
    let mut partial = [0.0; RICHARDSON_LEVELS];
    let mut level = 0;
    let mut checkpoint = RICHARDSON_BASE;
    // restart from scratch so every checkpoint is a plain partial sum S_K = Σ_{k<=K}
    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    let mut k = 0usize;
    while level < RICHARDSON_LEVELS {
        term *= term_ratio(k as f64);
        k += 1;
        sum.add(term);
        if k == checkpoint {
            partial[level] = sum.value();
            level += 1;
            checkpoint *= 2;
        }
    }
    Ok(richardson_power_tail(&partial, RICHARDSON_BASE as f64, excess))
}

/// Solve `S_j = S + K_j^{−s} Σ_{i<n−1} c_i K_j^{−i}`, `K_j = base·2^j`, for `S`.
fn richardson_power_tail(partial: &[f64], base: f64, s: f64) -> f64 {
    let n = partial.len();
    let mut m = [[0.0f64; RICHARDSON_LEVELS + 1]; RICHARDSON_LEVELS];
    for (j, row) in m.iter_mut().enumerate().take(n) {
        let kj = base * libm::pow(2.0, j as f64);
        // scale unknown c_i by base^{−s−i} to keep the system well conditioned
        let x = kj / base;
        row[0] = 1.0;
        for i in 0..n - 1 {
            row[i + 1] = libm::pow(x, -s - i as f64);
        }
        row[n] = partial[j];
    }
    // Gaussian elimination with partial pivoting
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
            .unwrap_or(col);
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for cidx in col..=n {
                    m[r][cidx] -= f * m[col][cidx];
                }
            }
        }
    }
    m[0][n] / m[0][0]
}

/// Terminating `3F2(1)` in exact rational arithmetic.
pub fn hyp3f2_unit_exact(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
    e: &BigRational,
) -> Result<BigRational> {
    let last = [a, b, c]
        .into_iter()
        .filter(|p| p.is_integer() && !p.is_positive())
        .filter_map(|p| (-p.to_integer()).to_usize())
        .min()
        .ok_or_else(|| Error::Domain(format!("exact 3F2 needs a terminating series, got a={a}, b={b}, c={c}")))?;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..last {
        let kq = BigRational::from_integer(BigInt::from(k));
        let den = (d + &kq) * (e + &kq) * (&kq + BigRational::one());
        if den.is_zero() {
            return Err(domain!("denominator parameter vanishes at k={k} before termination"));
        }
        term = term * (a + &kq) * (b + &kq) * (c + &kq) / den;
        sum += &term;
    }
    Ok(sum)
}

/// Right side of Watson's theorem,
/// `Γ(½)Γ(c+½)Γ((a+b+1)/2)Γ(c−(a+b−1)/2) / [Γ((a+1)/2)Γ((b+1)/2)Γ(c−(a−1)/2)Γ(c−(b−1)/2)]`,
/// valid when `2c − a − b + 1 > 0`.
pub fn watson_rhs(a: f64, b: f64, c: f64) -> Result<f64> {
    let cond = 2.0 * c - a - b + 1.0;
    if !(cond > 0.0) {
        return Err(Error::Precondition(format!(
            "Watson's theorem requires 2c - a - b + 1 > 0, got {cond} at (a, b, c) = ({a}, {b}, {c})"
        )));
    }
    let top = [0.5, c + 0.5, 0.5 * (a + b + 1.0), c - 0.5 * (a + b - 1.0)];
    let bottom = [0.5 * (a + 1.0), 0.5 * (b + 1.0), c - 0.5 * (a - 1.0), c - 0.5 * (b - 1.0)];
    let mut ln = 0.0;
    let mut sign = 1.0;
    for x in top {
        let (l, s) = log_gamma_signed(x)?;
        ln += l;
        sign *= s;
    }
    for x in bottom {
        let (l, s) = log_gamma_signed(x)?;
        ln -= l;
        sign *= s;
    }
    Ok(sign * libm::exp(ln))
}
