use alloc::format;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Point, PointSet, SpaceSpec};
use crate::{Error, Result};

fn unsupported(space: &SpaceSpec) -> Error {
    Error::UnsupportedSampling(format!(
        "{space}: no uniform sampler is available for the octonionic projective plane; \
         use chart points with the series or closed-form routes"
    ))
}

/// One `μ`-uniform point: a normalized standard Gaussian vector. Orthogonal,
/// unitary and symplectic invariance of the Gaussian makes its class uniform.
pub fn sample_point<R: Rng + ?Sized>(space: &SpaceSpec, rng: &mut R) -> Result<Point> {
    if !space.supports_sampling() {
        return Err(unsupported(space));
    }
    let len = space.point_len();
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        // a zero vector has probability zero, but cheap to guard
        if norm > 1e-150 {
            return Ok(Point::from_raw(v.into_iter().map(|x| x / norm).collect()));
        }
    }
}

/// `count` i.i.d. uniform points.
pub fn sample_uniform<R: Rng + ?Sized>(space: &SpaceSpec, count: usize, rng: &mut R) -> Result<PointSet> {
    if !space.supports_sampling() {
        return Err(unsupported(space));
    }
    let points = (0..count).map(|_| sample_point(space, rng)).collect::<Result<Vec<_>>>()?;
    Ok(PointSet { space: *space, points, label: format!("uniform {space}, N = {count}") })
}
