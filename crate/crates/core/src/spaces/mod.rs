//! The catalog `Q(d, d0)` of compact rank-one symmetric spaces, point
//! representations, metrics, ball volumes and sampling.

mod measure;
mod metric;
mod point;
mod sample;
mod volume;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

pub use measure::{RadiusMeasure, CANONICAL_NODES};
pub use metric::{chordal, cos_theta, embed, geodesic};
pub use point::{chart_point_oct, DistanceMatrix, PairDistances, Point, PointSet};
pub use sample::{sample_point, sample_uniform};
pub use volume::{avg_chordal, ball_volume, gamma_const, gamma_const_forms, gamma_const_sphere};

pub(crate) use metric::cos_theta_unchecked;

/// Sphere or projective space over one of the four normed division algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sphere,
    RealProj,
    ComplexProj,
    QuatProj,
    OctProj,
}

impl Family {
    /// Short code used in file formats: `s`, `rp`, `cp`, `hp`, `op`.
    pub fn code(self) -> &'static str {
        match self {
            Family::Sphere => "s",
            Family::RealProj => "rp",
            Family::ComplexProj => "cp",
            Family::QuatProj => "hp",
            Family::OctProj => "op",
        }
    }

    pub fn from_code(code: &str) -> Result<Self> {
        Ok(match code {
            "s" => Family::Sphere,
            "rp" => Family::RealProj,
            "cp" => Family::ComplexProj,
            "hp" => Family::QuatProj,
            "op" => Family::OctProj,
            other => return Err(Error::UnsupportedSpace(format!("unknown family code {other:?}"))),
        })
    }

    /// Real dimension of the underlying division algebra.
    pub fn algebra_dim(self) -> Option<usize> {
        match self {
            Family::Sphere => None,
            Family::RealProj => Some(1),
            Family::ComplexProj => Some(2),
            Family::QuatProj => Some(4),
            Family::OctProj => Some(8),
        }
    }
}

/// A catalog entry `Q(d, d0)`.
///
/// `n` is the projective dimension (for spheres `n = d`), `m` the dimension of
/// the Euclidean space the projection embedding lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub d0: usize,
    pub m: usize,
}

/// Build a [`SpaceSpec`] from a family and its dimension.
pub fn make_space(family: Family, n: usize) -> Result<SpaceSpec> {
    if n == 0 {
        return Err(Error::UnsupportedSpace(format!("{}0 has dimension zero", family.code())));
    }
    let spec = match family.algebra_dim() {
        None => SpaceSpec { family, n, d: n, d0: n, m: n + 1 },
        Some(d0) => {
            if family == Family::OctProj && n != 2 {
                return Err(Error::UnsupportedSpace(format!(
                    "octonionic projective spaces exist only for n = 2, got n = {n}"
                )));
            }
            let d = n * d0;
            SpaceSpec { family, n, d, d0, m: (n + 1) * (d + 2) / 2 }
        }
    };
    Ok(spec)
}

impl SpaceSpec {
    pub fn sphere(d: usize) -> Result<Self> {
        make_space(Family::Sphere, d)
    }

    /// The seven spaces used by default: `S¹, S², S³, RP², CP², HP², OP²`.
    pub fn default_catalog() -> Vec<SpaceSpec> {
        [
            (Family::Sphere, 1),
            (Family::Sphere, 2),
            (Family::Sphere, 3),
            (Family::RealProj, 2),
            (Family::ComplexProj, 2),
            (Family::QuatProj, 2),
            (Family::OctProj, 2),
        ]
        .into_iter()
        .map(|(f, n)| make_space(f, n).expect("catalog entries are valid"))
        .collect()
    }

    /// Number of reals stored per point.
    pub fn point_len(&self) -> usize {
        match self.family {
            Family::Sphere => self.d + 1,
            Family::OctProj => 27,
            _ => (self.n + 1) * self.d0,
        }
    }

    /// First Jacobi parameter of the zonal functions, `d/2 − 1`.
    pub fn alpha(&self) -> f64 {
        self.d as f64 / 2.0 - 1.0
    }

    /// Second Jacobi parameter of the zonal functions, `d0/2 − 1`.
    pub fn beta(&self) -> f64 {
        self.d0 as f64 / 2.0 - 1.0
    }

    pub fn supports_sampling(&self) -> bool {
        self.family != Family::OctProj
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.code(), self.n)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.code(), self.n)
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Parses names such as `s2`, `rp3`, `cp2`, `hp2`, `op2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::UnsupportedSpace(format!("missing dimension in {s:?}")))?;
        let (code, dim) = s.split_at(split);
        let n: usize = dim
            .parse()
            .map_err(|_| Error::UnsupportedSpace(format!("bad dimension in {s:?}")))?;
        make_space(Family::from_code(code)?, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_space_examples() {
        let cp2 = make_space(Family::ComplexProj, 2).unwrap();
        assert_eq!((cp2.d, cp2.d0, cp2.m), (4, 2, 9));
        let s3 = make_space(Family::Sphere, 3).unwrap();
        assert_eq!((s3.d, s3.d0), (3, 3));
        let op2 = make_space(Family::OctProj, 2).unwrap();
        assert_eq!((op2.d, op2.d0, op2.m), (16, 8, 27));
        assert!(matches!(make_space(Family::OctProj, 3), Err(Error::UnsupportedSpace(_))));
        assert!(make_space(Family::Sphere, 0).is_err());
    }

    #[test]
    fn embedding_dimension_counts_hermitian_matrices() {
        for (f, d0) in [(Family::RealProj, 1), (Family::ComplexProj, 2), (Family::QuatProj, 4)] {
            for n in 1..6 {
                let s = make_space(f, n).unwrap();
                assert_eq!(s.d, n * d0);
                // real diagonal plus one algebra element per off-diagonal pair
                assert_eq!(s.m, (n + 1) + d0 * n * (n + 1) / 2);
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for s in SpaceSpec::default_catalog() {
            assert_eq!(s.name().parse::<SpaceSpec>().unwrap(), s);
        }
        assert!("xp2".parse::<SpaceSpec>().is_err());
        assert!("cp".parse::<SpaceSpec>().is_err());
        assert!("op3".parse::<SpaceSpec>().is_err());
    }
}
