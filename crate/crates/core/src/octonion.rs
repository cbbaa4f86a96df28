//! Cayley–Dickson algebras of dimension 1, 2, 4 and 8 (reals, complex numbers,
//! quaternions, octonions) on flat `f64` slices, plus an [`Octonion`] value type.
//!
//! Doubling convention: `(a, b)(c, d) = (ac − d̄b, da + bc̄)`, `(a, b)̄ = (ā, −b)`.

use core::ops::{Add, Mul, Neg, Sub};

/// `out = x · y` for `x, y, out` of equal power-of-two length `≤ 8`.
pub fn cd_mul(x: &[f64], y: &[f64], out: &mut [f64]) {
    let n = x.len();
    debug_assert!(n == y.len() && n == out.len() && n.is_power_of_two() && n <= 8);
    if n == 1 {
        out[0] = x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mut t1 = [0.0; 4];
    let mut t2 = [0.0; 4];
    let mut dbar = [0.0; 4];
    let mut cbar = [0.0; 4];
    cd_conj(d, &mut dbar[..h]);
    cd_conj(c, &mut cbar[..h]);
    // first half: a c − d̄ b
    cd_mul(a, c, &mut t1[..h]);
    cd_mul(&dbar[..h], b, &mut t2[..h]);
    for i in 0..h {
        out[i] = t1[i] - t2[i];
    }
    // second half: d a + b c̄
    cd_mul(d, a, &mut t1[..h]);
    cd_mul(b, &cbar[..h], &mut t2[..h]);
    for i in 0..h {
        out[h + i] = t1[i] + t2[i];
    }
}

/// `out = x̄`.
pub fn cd_conj(x: &[f64], out: &mut [f64]) {
    out[0] = x[0];
    for i in 1..x.len() {
        out[i] = -x[i];
    }
}

/// Squared norm `x x̄` (a real number).
pub fn cd_norm_sqr(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// An octonion `x₀ + x₁e₁ + … + x₇e₇`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub const ZERO: Self = Self([0.0; 8]);
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub fn real(x: f64) -> Self {
        let mut v = [0.0; 8];
        v[0] = x;
        Self(v)
    }

    /// Basis unit `e_i`, `i < 8` (`e_0 = 1`).
    pub fn unit(i: usize) -> Self {
        let mut v = [0.0; 8];
        v[i] = 1.0;
        Self(v)
    }

    pub fn conj(&self) -> Self {
        let mut out = [0.0; 8];
        cd_conj(&self.0, &mut out);
        Self(out)
    }

    pub fn norm_sqr(&self) -> f64 {
        cd_norm_sqr(&self.0)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|v| v * s))
    }

    /// Euclidean inner product `Re(x ȳ)`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl Mul for Octonion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [0.0; 8];
        cd_mul(&self.0, &rhs.0, &mut out);
        Self(out)
    }
}

impl Add for Octonion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Self(out)
    }
}

impl Sub for Octonion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Octonion {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|v| -v))
    }
}
