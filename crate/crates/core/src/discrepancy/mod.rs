//! Point-set functionals: distance sums, the ball quadratic discrepancy by
//! three routes, the symmetric-difference distance by direct integration and
//! the residual of the invariance principle.

mod mc;

use alloc::vec::Vec;

use rand::Rng;

use crate::harmonic::{avg_symdiff, ExpansionCoeffs};
use crate::spaces::{
    avg_chordal, ball_volume, cos_theta_unchecked, gamma_const, sample_point, PairDistances, Point, PointSet,
    RadiusMeasure, SpaceSpec,
};
use crate::{Error, Result};

pub use mc::{shard_len, shard_rng, McEstimate, Moments, DEFAULT_SHARDS};

/// Which distance a sum is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Geodesic,
    Chordal,
}

/// Chordal distance from `cos θ`.
#[inline]
fn chord_from_cos(c: f64) -> f64 {
    libm::sqrt(((1.0 - c) / 2.0).max(0.0))
}

/// `Σ_{i,j} ρ(x_i, x_j)` over ordered pairs, diagonal included (it adds zero).
/// An empty set sums to zero.
pub fn pair_sum<P: PairDistances + ?Sized>(set: &P, metric: Metric) -> f64 {
    let n = set.len();
    let mut total = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in (i + 1)..n {
            row += match metric {
                Metric::Geodesic => set.theta(i, j),
                Metric::Chordal => chord_from_cos(set.cos_theta(i, j)),
            };
        }
        total += row;
    }
    2.0 * total
}

/// Row `i` of the upper-triangular part of [`pair_sum`]; lets callers split the
/// work by rows and add the results.
pub fn pair_sum_row<P: PairDistances + ?Sized>(set: &P, metric: Metric, i: usize) -> f64 {
    ((i + 1)..set.len())
        .map(|j| match metric {
            Metric::Geodesic => set.theta(i, j),
            Metric::Chordal => chord_from_cos(set.cos_theta(i, j)),
        })
        .sum()
}

/// `λ[ξ♮, D_N]` from the invariance principle: `(⟨τ⟩N² − τ[D_N]) / γ(Q)`.
pub fn lambda_closed<P: PairDistances + ?Sized>(space: &SpaceSpec, set: &P) -> f64 {
    lambda_from_chordal_sum(space, set.len(), pair_sum(set, Metric::Chordal))
}

/// `(⟨τ⟩N² − s) / γ(Q)` for a precomputed chordal sum `s`.
pub fn lambda_from_chordal_sum(space: &SpaceSpec, n: usize, chordal_sum: f64) -> f64 {
    let n2 = (n * n) as f64;
    (avg_chordal(space) * n2 - chordal_sum) / gamma_const(space)
}

/// `λ[ξ, D_N] = Σ_{i,j} (⟨θ^Δ(ξ)⟩ − θ^Δ(ξ, θ_ij))` with `θ^Δ` from its zonal series.
pub fn lambda_series<P: PairDistances + ?Sized>(
    coeffs: &ExpansionCoeffs,
    set: &P,
    tol: f64,
) -> Result<f64> {
    let n = set.len();
    let mean = avg_symdiff(&coeffs.space, &coeffs.measure);
    let mut off = 0.0;
    for i in 0..n {
        off += lambda_series_row(coeffs, set, tol, mean, i)?;
    }
    Ok(n as f64 * mean + 2.0 * off)
}

/// `Σ_{j>i} (⟨θ^Δ⟩ − θ^Δ(θ_ij))` for one row.
pub fn lambda_series_row<P: PairDistances + ?Sized>(
    coeffs: &ExpansionCoeffs,
    set: &P,
    tol: f64,
    mean: f64,
    i: usize,
) -> Result<f64> {
    let mut row = 0.0;
    for j in (i + 1)..set.len() {
        row += mean - coeffs.symdiff(set.theta(i, j), tol)?.value;
    }
    Ok(row)
}

fn require_sampling(space: &SpaceSpec) -> Result<()> {
    if space.supports_sampling() {
        Ok(())
    } else {
        Err(Error::UnsupportedSampling(alloc::format!(
            "{space}: Monte Carlo needs uniform samples, which are unavailable on the octonionic projective plane"
        )))
    }
}

/// Accumulates `samples` draws of `(#(D ∩ B(y, r)) − N v(r))²` with `y` uniform
/// and `r = arccos(1 − 2u)`, i.e. density `sin(r)/2` on `[0, π]`.
pub fn lambda_mc_moments<R: Rng + ?Sized>(
    set: &PointSet,
    samples: u64,
    rng: &mut R,
) -> Result<Moments> {
    let space = &set.space;
    require_sampling(space)?;
    let n = set.points.len() as f64;
    let mut acc = Moments::default();
    for _ in 0..samples {
        let y = sample_point(space, rng)?;
        let u: f64 = rng.random();
        let cos_r = 1.0 - 2.0 * u;
        let r = libm::acos(cos_r);
        // θ < r  ⇔  cos θ > cos r
        let count = set
            .points
            .iter()
            .filter(|p| cos_theta_unchecked(space, y.coords(), p.coords()) > cos_r)
            .count() as f64;
        let dev = count - n * ball_volume(space, r)?;
        acc.push(dev * dev);
    }
    Ok(acc)
}

/// Monte Carlo estimate of `λ[ξ♮, D_N]`; the factor 2 is the mass of `ξ♮`.
/// Samples are split over [`DEFAULT_SHARDS`] streams derived from `seed` and
/// merged in shard order.
pub fn lambda_mc(set: &PointSet, samples: u64, seed: u64) -> Result<McEstimate> {
    let mut total = Moments::default();
    for k in 0..DEFAULT_SHARDS {
        let mut rng = shard_rng(seed, k);
        total.merge(&lambda_mc_moments(set, shard_len(samples, DEFAULT_SHARDS, k), &mut rng)?);
    }
    Ok(total.estimate(2.0, seed))
}

/// `θ^Δ(ξ, x, y) = ∫ (v(r) − μ(B(x, r) ∩ B(y, r))) dξ(r)` by a fixed radius
/// rule outside and Monte Carlo inside: every sample `z` contributes
/// `Σ_i w_i (v(r_i) − 1[max(θ(z,x), θ(z,y)) < r_i])`.
pub fn symdiff_direct_moments<R: Rng + ?Sized>(
    space: &SpaceSpec,
    x: &Point,
    y: &Point,
    measure: &RadiusMeasure,
    samples: u64,
    rng: &mut R,
) -> Result<Moments> {
    require_sampling(space)?;
    let rule: Vec<(f64, f64, f64)> = measure
        .discretize()
        .into_iter()
        .map(|(r, w)| Ok((libm::cos(r), w, ball_volume(space, r)?)))
        .collect::<Result<_>>()?;
    let base: f64 = rule.iter().map(|(_, w, v)| w * v).sum();
    let mut acc = Moments::default();
    for _ in 0..samples {
        let z = sample_point(space, rng)?;
        let c = cos_theta_unchecked(space, z.coords(), x.coords())
            .min(cos_theta_unchecked(space, z.coords(), y.coords()));
        let inside: f64 = rule.iter().filter(|(cr, _, _)| c > *cr).map(|(_, w, _)| w).sum();
        acc.push(base - inside);
    }
    Ok(acc)
}

/// Sharded version of [`symdiff_direct_moments`]. Coinciding points give exactly 0.
pub fn symdiff_direct(
    space: &SpaceSpec,
    x: &Point,
    y: &Point,
    measure: &RadiusMeasure,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    require_sampling(space)?;
    x.validate(space)?;
    y.validate(space)?;
    if x.coords() == y.coords() {
        return Ok(McEstimate { value: 0.0, stderr: 0.0, samples, seed });
    }
    let mut total = Moments::default();
    for k in 0..DEFAULT_SHARDS {
        let mut rng = shard_rng(seed, k);
        let m = symdiff_direct_moments(space, x, y, measure, shard_len(samples, DEFAULT_SHARDS, k), &mut rng)?;
        total.merge(&m);
    }
    Ok(total.estimate(1.0, seed))
}

/// `θ_p^Δ = (θ^Δ)^{1/p}`, an `L_p`-metric for `p ≥ 1`.
pub fn lp_symdiff(coeffs: &ExpansionCoeffs, theta: f64, p: f64, tol: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(alloc::format!("p must be at least 1, got {p}")));
    }
    let v = coeffs.symdiff(theta, tol)?.value.max(0.0);
    Ok(libm::pow(v, 1.0 / p))
}

/// How `λ` enters [`invariance_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaRoute {
    Closed,
    Series { tol: f64 },
    MonteCarlo { samples: u64, seed: u64 },
}

/// `γ(Q) λ + τ[D_N] − ⟨τ⟩ N²`, with the standard error of the Monte Carlo route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub stderr: Option<f64>,
    pub lambda: f64,
    /// `⟨τ⟩ N²`, the natural scale of the residual.
    pub scale: f64,
}

pub fn invariance_residual(set: &PointSet, route: LambdaRoute) -> Result<Residual> {
    let space = &set.space;
    let chord = pair_sum(set, Metric::Chordal);
    let (lambda, stderr) = match route {
        LambdaRoute::Closed => (lambda_from_chordal_sum(space, set.points.len(), chord), None),
        LambdaRoute::Series { tol } => {
            let coeffs = ExpansionCoeffs::full(space, &RadiusMeasure::CanonicalSine)?;
            (lambda_series(&coeffs, set, tol)?, None)
        }
        LambdaRoute::MonteCarlo { samples, seed } => {
            let e = lambda_mc(set, samples, seed)?;
            (e.value, Some(e.stderr))
        }
    };
    let g = gamma_const(space);
    let n2 = (set.points.len() * set.points.len()) as f64;
    Ok(Residual {
        value: g * lambda + chord - avg_chordal(space) * n2,
        stderr: stderr.map(|s| g * s),
        lambda,
        scale: avg_chordal(space) * n2,
    })
}

#[cfg(test)]
mod tests;
