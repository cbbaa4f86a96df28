//! Gauss–Jacobi rules by the Golub–Welsch method.

use alloc::vec::Vec;

use super::gamma::log_beta;
use super::jacobi::monic_recurrence;
use crate::error::domain;
use crate::{Error, Result};

/// An `m`-node Gauss rule for the weight `(1−t)^α (1+t)^β` on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub alpha: f64,
    pub beta: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(t_i)`, i.e. `∫ f(t) (1−t)^α (1+t)^β dt` for polynomial `f` of degree `≤ 2m−1`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `∫_{−1}^{1} (1−t)^α (1+t)^β dt = 2^{α+β+1} B(α+1, β+1)`.
pub fn jacobi_weight_mass(alpha: f64, beta: f64) -> Result<f64> {
    Ok(libm::exp(
        (alpha + beta + 1.0) * core::f64::consts::LN_2 + log_beta(alpha + 1.0, beta + 1.0)?,
    ))
}

/// Gauss–Jacobi rule with `m` nodes.
pub fn gauss_jacobi(m: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(domain!("gauss_jacobi needs at least one node"));
    }
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(domain!("gauss_jacobi requires α, β > -1, got ({alpha}, {beta})"));
    }
    let (mut diag, off) = monic_recurrence(m, alpha, beta);
    let mut sub: Vec<f64> = off.iter().skip(1).map(|b| libm::sqrt(*b)).collect();
    sub.push(0.0);
    let mut first = alloc::vec![0.0; m];
    first[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut sub, &mut first)?;

    let mass = jacobi_weight_mass(alpha, beta)?;
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first)
        .map(|(t, v)| (t, mass * v * v))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { alpha, beta, nodes, weights })
}

/// Gauss–Legendre rule mapped to `[lo, hi]`: returns (nodes, weights).
pub fn gauss_legendre_on(m: usize, lo: f64, hi: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let rule = gauss_jacobi(m, 0.0, 0.0)?;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let nodes = rule.nodes.iter().map(|t| mid + half * t).collect();
    let weights = rule.weights.iter().map(|w| half * w).collect();
    Ok((nodes, weights))
}

/// Implicit QL on a symmetric tridiagonal matrix. On return `diag` holds the
/// eigenvalues and `first` the first components of the eigenvectors.
/// `sub[i]` couples rows `i` and `i+1`.
fn tridiagonal_ql(diag: &mut [f64], sub: &mut [f64], first: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if sub[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence { terms: iter, estimate: sub[l].abs(), tol: 0.0 });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
            let mut r = libm::hypot(g, 1.0);
            g = diag[m] - diag[l] + sub[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * sub[i];
                let b = c * sub[i];
                r = libm::hypot(f, g);
                sub[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    sub[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let f = first[i + 1];
                first[i + 1] = s * first[i] + c * f;
                first[i] = c * first[i] - s * f;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            sub[l] = g;
            sub[m] = 0.0;
        }
    }
    Ok(())
}
