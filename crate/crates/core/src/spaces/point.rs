use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::metric::cos_theta_unchecked;
use super::{Family, SpaceSpec};
use crate::octonion::Octonion;
use crate::{Error, Result};

const UNIT_TOL: f64 = 1e-12;
const IDEMPOTENT_TOL: f64 = 1e-10;

/// A point of some `Q(d, d0)`.
///
/// Spheres store a unit vector of `R^{d+1}`; `RP^n`, `CP^n`, `HP^n` store a
/// unit representative in `F^{n+1}` as `(n+1)·d0` reals (coordinate-major, each
/// coordinate a block of `d0` reals); `OP²` stores the Hermitian idempotent
/// as `[p11, p22, p33, p12 (8), p13 (8), p23 (8)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Wrap coordinates after checking them against the space's invariants.
    pub fn new(space: &SpaceSpec, coords: Vec<f64>) -> Result<Self> {
        let p = Self { coords };
        p.validate(space)?;
        Ok(p)
    }

    /// Normalize a representative vector (not for `OP²`).
    pub fn normalized(space: &SpaceSpec, mut coords: Vec<f64>) -> Result<Self> {
        if space.family == Family::OctProj {
            return Err(Error::Usage("OP² points are idempotent matrices; use chart_point_oct".into()));
        }
        let norm = libm::sqrt(coords.iter().map(|v| v * v).sum::<f64>());
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidPoint("cannot normalize a zero or non-finite vector".into()));
        }
        coords.iter_mut().for_each(|v| *v /= norm);
        Self::new(space, coords)
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn validate(&self, space: &SpaceSpec) -> Result<()> {
        let len = space.point_len();
        if self.coords.len() != len {
            return Err(Error::InvalidPoint(format!(
                "{} expects {len} coordinates per point, got {}",
                space,
                self.coords.len()
            )));
        }
        if self.coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPoint("non-finite coordinate".into()));
        }
        if space.family == Family::OctProj {
            let m = OctHermitian::from_slice(&self.coords);
            let trace = m.diag.iter().sum::<f64>();
            if (trace - 1.0).abs() > IDEMPOTENT_TOL {
                return Err(Error::InvalidPoint(format!("OP² matrix has trace {trace}, expected 1")));
            }
            let err = m.idempotency_defect();
            if err > IDEMPOTENT_TOL {
                return Err(Error::InvalidPoint(format!("OP² matrix is not idempotent (defect {err:e})")));
            }
        } else {
            let norm2: f64 = self.coords.iter().map(|v| v * v).sum();
            if (libm::sqrt(norm2) - 1.0).abs() > UNIT_TOL {
                return Err(Error::InvalidPoint(format!("representative has norm {}", libm::sqrt(norm2))));
            }
        }
        Ok(())
    }
}

/// A 3×3 Hermitian octonionic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OctHermitian {
    pub diag: [f64; 3],
    /// entries (1,2), (1,3), (2,3)
    pub off: [Octonion; 3],
}

impl OctHermitian {
    pub fn from_slice(v: &[f64]) -> Self {
        let block = |k: usize| {
            let mut o = [0.0; 8];
            o.copy_from_slice(&v[3 + 8 * k..11 + 8 * k]);
            Octonion(o)
        };
        Self { diag: [v[0], v[1], v[2]], off: [block(0), block(1), block(2)] }
    }

    pub fn to_vec(self) -> Vec<f64> {
        let mut v = Vec::with_capacity(27);
        v.extend_from_slice(&self.diag);
        for o in self.off {
            v.extend_from_slice(&o.0);
        }
        v
    }

    /// Entry `(i, j)` with `P_ji = conj(P_ij)`.
    pub fn entry(&self, i: usize, j: usize) -> Octonion {
        if i == j {
            return Octonion::real(self.diag[i]);
        }
        let (lo, hi, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let idx = match (lo, hi) {
            (0, 1) => 0,
            (0, 2) => 1,
            _ => 2,
        };
        if flip {
            self.off[idx].conj()
        } else {
            self.off[idx]
        }
    }

    /// `max |(P∘P − P)_ij|`; for a single matrix the Jordan square is the matrix square.
    pub fn idempotency_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in i..3 {
                let mut acc = Octonion::ZERO;
                for k in 0..3 {
                    acc = acc + self.entry(i, k) * self.entry(k, j);
                }
                let diff = acc - self.entry(i, j);
                worst = worst.max(diff.0.iter().fold(0.0f64, |m, v| m.max(v.abs())));
            }
        }
        worst
    }

    /// `Re tr(P ∘ Q)`.
    pub fn trace_form(&self, other: &Self) -> f64 {
        let diag: f64 = self.diag.iter().zip(&other.diag).map(|(a, b)| a * b).sum();
        let off: f64 = self.off.iter().zip(&other.off).map(|(a, b)| a.dot(b)).sum();
        diag + 2.0 * off
    }
}

/// The `OP²` point whose idempotent is `v v*` for `v = (c1, c2, 1)/|v|`.
pub fn chart_point_oct(c1: Octonion, c2: Octonion) -> Point {
    let norm2 = 1.0 + c1.norm_sqr() + c2.norm_sqr();
    let s = 1.0 / norm2;
    let m = OctHermitian {
        diag: [c1.norm_sqr() * s, c2.norm_sqr() * s, s],
        off: [(c1 * c2.conj()).scale(s), c1.scale(s), c2.scale(s)],
    };
    Point::from_raw(m.to_vec())
}

/// Anything that can report the geodesic distances of `N` points.
pub trait PairDistances {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `cos θ(x_i, x_j)`.
    fn cos_theta(&self, i: usize, j: usize) -> f64;

    fn theta(&self, i: usize, j: usize) -> f64 {
        libm::acos(self.cos_theta(i, j).clamp(-1.0, 1.0))
    }
}

/// An ordered collection of points on one space.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub space: SpaceSpec,
    pub points: Vec<Point>,
    pub label: String,
}

impl PointSet {
    pub fn new(space: SpaceSpec, points: Vec<Point>, label: impl Into<String>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            p.validate(&space).map_err(|e| Error::InvalidPoint(format!("point {i}: {e}")))?;
        }
        Ok(Self { space, points, label: label.into() })
    }

    pub fn empty(space: SpaceSpec, label: impl Into<String>) -> Self {
        Self { space, points: Vec::new(), label: label.into() }
    }

    /// Geodesic distance matrix.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.points.len();
        let mut theta = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let t = PairDistances::theta(self, i, j);
                theta[i * n + j] = t;
                theta[j * n + i] = t;
            }
        }
        DistanceMatrix { n, theta }
    }
}

impl PairDistances for PointSet {
    fn len(&self) -> usize {
        self.points.len()
    }

    fn cos_theta(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        cos_theta_unchecked(&self.space, self.points[i].coords(), self.points[j].coords())
    }
}

/// A symmetric `N×N` matrix of geodesic distances in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    theta: Vec<f64>,
}

impl DistanceMatrix {
    /// Rows must form a square symmetric matrix with zero diagonal and entries in `[0, π]`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut theta = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Usage(format!("distance matrix row {i} has {} entries, expected {n}", row.len())));
            }
            theta.extend_from_slice(row);
        }
        let tol = 1e-12;
        for i in 0..n {
            for j in 0..n {
                let t = theta[i * n + j];
                if !(-tol..=core::f64::consts::PI + tol).contains(&t) {
                    return Err(Error::Usage(format!("distance ({i}, {j}) = {t} is outside [0, π]")));
                }
                if (t - theta[j * n + i]).abs() > 1e-12 {
                    return Err(Error::Usage(format!("distance matrix is not symmetric at ({i}, {j})")));
                }
            }
            if theta[i * n + i].abs() > tol {
                return Err(Error::Usage(format!("distance matrix has nonzero diagonal at {i}")));
            }
        }
        for t in theta.iter_mut() {
            *t = t.clamp(0.0, core::f64::consts::PI);
        }
        Ok(Self { n, theta })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.theta[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.theta.chunks(self.n.max(1))
    }
}

impl PairDistances for DistanceMatrix {
    fn len(&self) -> usize {
        self.n
    }

    fn cos_theta(&self, i: usize, j: usize) -> f64 {
        libm::cos(self.get(i, j))
    }

    fn theta(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}
