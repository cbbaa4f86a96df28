use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use super::point::OctHermitian;
use super::{Family, Point, SpaceSpec};
use crate::octonion::{cd_conj, cd_mul};
use crate::{Error, Result};

/// `|⟨x, y⟩_F|²` for unit representatives stored as `(n+1)` blocks of `d0` reals,
/// with `⟨x, y⟩ = Σ x̄_i y_i`. The real, complex and quaternion cases are
/// written out; they sit in the inner loop of the Monte Carlo estimators.
fn inner_abs_sqr(d0: usize, x: &[f64], y: &[f64]) -> f64 {
    match d0 {
        1 => {
            let s: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
            s * s
        }
        2 => {
            let (mut re, mut im) = (0.0, 0.0);
            for (a, b) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
                re += a[0] * b[0] + a[1] * b[1];
                im += a[0] * b[1] - a[1] * b[0];
            }
            re * re + im * im
        }
        4 => {
            let mut acc = [0.0; 4];
            for (a, b) in x.chunks_exact(4).zip(y.chunks_exact(4)) {
                // x̄ y in the Cayley–Dickson convention of `cd_mul`
                acc[0] += a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
                acc[1] += a[0] * b[1] - a[1] * b[0] + a[3] * b[2] - a[2] * b[3];
                acc[2] += a[0] * b[2] + a[1] * b[3] - a[2] * b[0] - a[3] * b[1];
                acc[3] += a[0] * b[3] - a[1] * b[2] + a[2] * b[1] - a[3] * b[0];
            }
            acc.iter().map(|v| v * v).sum()
        }
        _ => inner_abs_sqr_generic(d0, x, y),
    }
}

fn inner_abs_sqr_generic(d0: usize, x: &[f64], y: &[f64]) -> f64 {
    let mut acc = [0.0; 8];
    let mut xbar = [0.0; 8];
    let mut prod = [0.0; 8];
    for (xi, yi) in x.chunks_exact(d0).zip(y.chunks_exact(d0)) {
        cd_conj(xi, &mut xbar[..d0]);
        cd_mul(&xbar[..d0], yi, &mut prod[..d0]);
        for k in 0..d0 {
            acc[k] += prod[k];
        }
    }
    acc[..d0].iter().map(|v| v * v).sum()
}

/// `cos θ` from raw coordinates, clamped to `[−1, 1]`; no length checks.
pub(crate) fn cos_theta_unchecked(space: &SpaceSpec, x: &[f64], y: &[f64]) -> f64 {
    let c = match space.family {
        Family::Sphere => x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>(),
        Family::OctProj => {
            2.0 * OctHermitian::from_slice(x).trace_form(&OctHermitian::from_slice(y)) - 1.0
        }
        _ => 2.0 * inner_abs_sqr(space.d0, x, y) - 1.0,
    };
    c.clamp(-1.0, 1.0)
}

fn check_pair(space: &SpaceSpec, x: &Point, y: &Point) -> Result<()> {
    let len = space.point_len();
    if x.coords().len() != len || y.coords().len() != len {
        return Err(Error::Usage(format!(
            "points with {} and {} coordinates do not belong to {space} ({len} coordinates)",
            x.coords().len(),
            y.coords().len()
        )));
    }
    Ok(())
}

/// `cos θ(x, y)`.
pub fn cos_theta(space: &SpaceSpec, x: &Point, y: &Point) -> Result<f64> {
    check_pair(space, x, y)?;
    Ok(cos_theta_unchecked(space, x.coords(), y.coords()))
}

/// Geodesic distance normalized so the diameter is `π`.
pub fn geodesic(space: &SpaceSpec, x: &Point, y: &Point) -> Result<f64> {
    Ok(libm::acos(cos_theta(space, x, y)?))
}

/// Chordal distance `sin(θ/2)`, computed as `√((1 − cos θ)/2)` to keep small
/// distances accurate.
pub fn chordal(space: &SpaceSpec, x: &Point, y: &Point) -> Result<f64> {
    let c = cos_theta(space, x, y)?;
    Ok(libm::sqrt(((1.0 - c) / 2.0).max(0.0)))
}

/// Flattened projection matrix `Π(x) = x x*` with off-diagonal entries scaled
/// by `√2`, so Euclidean and Frobenius norms agree. Spheres embed as themselves.
pub fn embed(space: &SpaceSpec, x: &Point) -> Result<Vec<f64>> {
    let c = x.coords();
    if c.len() != space.point_len() {
        return Err(Error::Usage(format!("point does not belong to {space}")));
    }
    match space.family {
        Family::Sphere => Ok(c.to_vec()),
        Family::OctProj => {
            let mut v = c.to_vec();
            v[3..].iter_mut().for_each(|t| *t *= SQRT_2);
            Ok(v)
        }
        _ => {
            let d0 = space.d0;
            let k = space.n + 1;
            let blocks: Vec<&[f64]> = c.chunks_exact(d0).collect();
            let mut v = Vec::with_capacity(space.m);
            v.extend(blocks.iter().map(|b| b.iter().map(|t| t * t).sum::<f64>()));
            let mut conj = [0.0; 4];
            let mut prod = [0.0; 4];
            for i in 0..k {
                for j in (i + 1)..k {
                    cd_conj(blocks[j], &mut conj[..d0]);
                    cd_mul(blocks[i], &conj[..d0], &mut prod[..d0]);
                    v.extend(prod[..d0].iter().map(|t| t * SQRT_2));
                }
            }
            debug_assert_eq!(v.len(), space.m);
            Ok(v)
        }
    }
}
