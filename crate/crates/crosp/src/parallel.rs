//! Rayon versions of the core estimators.
//!
//! Work is split into pieces whose boundaries do not depend on the thread
//! count (matrix rows, Monte Carlo shards, spaces) and the partial results
//! are combined in index order. Every function here therefore returns the
//! same bits as its sequential counterpart in `crosp_core`, whatever the
//! size of the pool.

use crosp_core::discrepancy::{
    lambda_from_chordal_sum, lambda_mc_moments, lambda_series_row, pair_sum_row, shard_len, shard_rng,
    symdiff_direct_moments, McEstimate, Metric, Moments, DEFAULT_SHARDS,
};
use crosp_core::harmonic::{avg_symdiff, ExpansionCoeffs};
use crosp_core::spaces::{avg_chordal, gamma_const, PairDistances, Point, PointSet, RadiusMeasure, SpaceSpec};
use crosp_core::{Error, Result};
use rayon::prelude::*;

/// Parallel `pair_sum`.
pub fn pair_sum<P: PairDistances + Sync + ?Sized>(set: &P, metric: Metric) -> f64 {
    let rows: Vec<f64> = (0..set.len()).into_par_iter().map(|i| pair_sum_row(set, metric, i)).collect();
    let mut total = 0.0;
    for r in rows {
        total += r;
    }
    2.0 * total
}

/// Parallel `lambda_closed`.
pub fn lambda_closed<P: PairDistances + Sync + ?Sized>(space: &SpaceSpec, set: &P) -> f64 {
    lambda_from_chordal_sum(space, set.len(), pair_sum(set, Metric::Chordal))
}

/// Parallel `lambda_series`.
pub fn lambda_series<P: PairDistances + Sync + ?Sized>(coeffs: &ExpansionCoeffs, set: &P, tol: f64) -> Result<f64> {
    let n = set.len();
    let mean = avg_symdiff(&coeffs.space, &coeffs.measure);
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| lambda_series_row(coeffs, set, tol, mean, i))
        .collect::<Result<_>>()?;
    let mut off = 0.0;
    for r in rows {
        off += r;
    }
    Ok(n as f64 * mean + 2.0 * off)
}

fn merge_in_order(parts: Vec<Moments>) -> Moments {
    let mut total = Moments::default();
    for m in &parts {
        total.merge(m);
    }
    total
}

/// Parallel `lambda_mc`: one task per shard.
pub fn lambda_mc(set: &PointSet, samples: u64, seed: u64) -> Result<McEstimate> {
    let parts: Vec<Moments> = (0..DEFAULT_SHARDS)
        .into_par_iter()
        .map(|k| lambda_mc_moments(set, shard_len(samples, DEFAULT_SHARDS, k), &mut shard_rng(seed, k)))
        .collect::<Result<_>>()?;
    Ok(merge_in_order(parts).estimate(2.0, seed))
}

/// Parallel `symdiff_direct`.
pub fn symdiff_direct(
    space: &SpaceSpec,
    x: &Point,
    y: &Point,
    measure: &RadiusMeasure,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if !space.supports_sampling() {
        return Err(Error::UnsupportedSampling(format!("{space}: no uniform sampler")));
    }
    x.validate(space)?;
    y.validate(space)?;
    if x.coords() == y.coords() {
        return Ok(McEstimate { value: 0.0, stderr: 0.0, samples, seed });
    }
    let parts: Vec<Moments> = (0..DEFAULT_SHARDS)
        .into_par_iter()
        .map(|k| {
            let len = shard_len(samples, DEFAULT_SHARDS, k);
            symdiff_direct_moments(space, x, y, measure, len, &mut shard_rng(seed, k))
        })
        .collect::<Result<_>>()?;
    Ok(merge_in_order(parts).estimate(1.0, seed))
}

/// `γ(Q) λ + τ[D_N] − ⟨τ⟩ N²` for a Monte Carlo `λ`, with its standard error.
pub fn mc_residual(set: &PointSet, samples: u64, seed: u64) -> Result<(f64, f64)> {
    let space = &set.space;
    let est = lambda_mc(set, samples, seed)?;
    let g = gamma_const(space);
    let n2 = (set.points.len() * set.points.len()) as f64;
    let chord = pair_sum(set, Metric::Chordal);
    Ok((g * est.value + chord - avg_chordal(space) * n2, g * est.stderr))
}
