//! Tabulated expansion coefficients and the accelerated evaluation of the two
//! metric series.
//!
//! Both series have the shape `f(θ) = mean − Σ_{l≥1} c_l φ_l(θ)` where
//! `mean = Σ c_l` is the average of `f` (the zonal functions average to zero)
//! and is known independently. The coefficients decay like `l^{−2}`, so plain
//! partial sums converge too slowly near `θ = 0`. The tail `Σ_{l>L} c_l φ_l` is
//! estimated as `c_{L+1} (Φ̄ − Φ_L)`, where `Φ_L = Σ_{l≤L} φ_l` and `Φ̄` is a
//! Hann-weighted average of `Φ` over `[L/2, L]`, an Abel-type limit of the
//! oscillating partial sums. Estimates at `L = 256, 512, …` are compared and the
//! evaluation stops once three consecutive ones agree within the tolerance
//! (two at the term cap).

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{avg_symdiff, beta_d, check_theta, zonal_all};
use crate::spaces::{avg_chordal, RadiusMeasure, SpaceSpec};
use crate::specfun::{jacobi_unchecked, CompensatedSum};
use crate::{Error, Result};

/// Hard cap on the number of series terms.
pub const L_MAX: usize = 10_000;

const FIRST_CHECKPOINT: usize = 256;

/// An evaluated series: value, number of terms used and the last change
/// between checkpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
    pub delta: f64,
}

/// `M_l`, `C_l`, `A_l(ξ)` for `1 ≤ l ≤ L + 1` (index 0 unused), immutable once built.
#[derive(Debug, Clone)]
pub struct ExpansionCoeffs {
    pub space: SpaceSpec,
    pub measure: RadiusMeasure,
    pub l_max: usize,
    pub m_l: Vec<f64>,
    pub c_l: Vec<f64>,
    pub a_l: Vec<f64>,
    /// Bound on `Σ_{l>L} 2·(M_l C_l / 2)` from the `l^{−2}` decay of the terms.
    pub tail_bound: f64,
    /// The same bound for the symmetric-difference series.
    pub tail_bound_symdiff: f64,
    chordal_coef: Vec<f64>,
    symdiff_coef: Vec<f64>,
    mean_chordal: f64,
    mean_symdiff: f64,
}

impl ExpansionCoeffs {
    /// Tabulates up to `l_max + 1` (one extra term feeds the tail estimate).
    pub fn new(space: &SpaceSpec, measure: &RadiusMeasure, l_max: usize) -> Result<Self> {
        if l_max == 0 {
            return Err(Error::Domain("truncation order must be positive".into()));
        }
        let top = l_max + 1;
        let (d, d0) = (space.d as f64, space.d0 as f64);
        let h = (d + d0) / 2.0;

        // M_l = (2l − 1 + h) G_l with G_{l+1}/G_l = (l+1)(l−1+h) / ((l+d/2)(l+d0/2)).
        let mut m_l = alloc::vec![0.0; top + 1];
        let mut g = libm::exp(
            crate::specfun::ln_gamma_pos(h) - crate::specfun::ln_gamma_pos(1.0 + d / 2.0)
                - crate::specfun::ln_gamma_pos(1.0 + d0 / 2.0),
        );
        for l in 1..=top {
            let lf = l as f64;
            if l > 1 {
                let p = lf - 1.0;
                g *= (p + 1.0) * (p - 1.0 + h) / ((p + d / 2.0) * (p + d0 / 2.0));
            }
            m_l[l] = (2.0 * lf - 1.0 + h) * g;
        }

        // C_{l+1}/C_l = (l + d0/2)/(l + d0/2 + (d+1)/2) · (l − 1/2) · (l + d/2) / (l+1)².
        let mut c_l = alloc::vec![0.0; top + 1];
        c_l[1] = super::coeff_c(space, 1)?;
        for l in 1..top {
            let lf = l as f64;
            c_l[l + 1] = c_l[l] * (lf + d0 / 2.0) / (lf + d0 / 2.0 + (d + 1.0) / 2.0) * (lf - 0.5)
                * (lf + d / 2.0)
                / ((lf + 1.0) * (lf + 1.0));
        }

        let a_l = match measure {
            RadiusMeasure::CanonicalSine => {
                // A_{l+1}/A_l = (n+1/2)(α+1+n)(β+1+n) / ((n+1)²(α+β+3/2+n)), n = l−1, α = d/2, β = d0/2
                let mut a = alloc::vec![0.0; top + 1];
                a[1] = super::coeff_a(space, 1, measure)?;
                let (al, be) = (d / 2.0, d0 / 2.0);
                for l in 1..top {
                    let n = (l - 1) as f64;
                    a[l + 1] = a[l] * (n + 0.5) * (al + 1.0 + n) * (be + 1.0 + n)
                        / ((n + 1.0) * (n + 1.0) * (al + be + 1.5 + n));
                }
                a
            }
            RadiusMeasure::Quadrature { nodes, weights } => {
                let mut a = alloc::vec![0.0; top + 1];
                let mut p = alloc::vec![0.0; top];
                for (&r, &w) in nodes.iter().zip(weights) {
                    let (s, c) = (libm::sin(r / 2.0), libm::cos(r / 2.0));
                    let scale = w * libm::pow(s, 2.0 * d) * libm::pow(c, 2.0 * d0);
                    if scale == 0.0 {
                        continue;
                    }
                    jacobi_all(d / 2.0, d0 / 2.0, libm::cos(r), &mut p);
                    for l in 1..=top {
                        a[l] += scale * p[l - 1] * p[l - 1];
                    }
                }
                a
            }
        };

        let bd = beta_d(space);
        let chordal_coef: Vec<f64> = (0..=top).map(|l| if l == 0 { 0.0 } else { m_l[l] * c_l[l] / 2.0 }).collect();
        let symdiff_coef: Vec<f64> = (0..=top)
            .map(|l| if l == 0 { 0.0 } else { m_l[l] * a_l[l] / (bd * (l * l) as f64) })
            .collect();
        let lf = l_max as f64;
        let tail_bound = 2.0 * chordal_coef[l_max] * lf;
        let tail_bound_symdiff = 2.0 * symdiff_coef[l_max] * lf;
        Ok(Self {
            space: *space,
            measure: measure.clone(),
            l_max,
            m_l,
            c_l,
            a_l,
            tail_bound,
            tail_bound_symdiff,
            chordal_coef,
            symdiff_coef,
            mean_chordal: avg_chordal(space),
            mean_symdiff: avg_symdiff(space, measure),
        })
    }

    /// Coefficients up to the global cap.
    pub fn full(space: &SpaceSpec, measure: &RadiusMeasure) -> Result<Self> {
        Self::new(space, measure, L_MAX)
    }

    /// `τ(θ) = (1/2) Σ M_l C_l (1 − φ_l(θ))`.
    pub fn chordal(&self, theta: f64, tol: f64) -> Result<SeriesValue> {
        self.accelerated(theta, tol, &self.chordal_coef, self.mean_chordal)
    }

    /// `θ^Δ(ξ, θ) = B(d/2, d0/2)^{−1} Σ l^{−2} M_l A_l(ξ) (1 − φ_l(θ))`.
    pub fn symdiff(&self, theta: f64, tol: f64) -> Result<SeriesValue> {
        self.accelerated(theta, tol, &self.symdiff_coef, self.mean_symdiff)
    }

    /// `Σ_{l ≤ L} M_l C_l / 2`, a partial sum of the mean chordal distance.
    pub fn chordal_coef_sum(&self) -> f64 {
        self.chordal_coef[1..=self.l_max].iter().sum()
    }

    fn accelerated(&self, theta: f64, tol: f64, coef: &[f64], mean: f64) -> Result<SeriesValue> {
        check_theta(theta)?;
        if !(tol > 0.0) {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        if theta == 0.0 {
            return Ok(SeriesValue { value: 0.0, terms: 0, delta: 0.0 });
        }
        let l_max = self.l_max;
        let mut phi = alloc::vec![0.0; l_max + 1];
        zonal_all(self.space.alpha(), self.space.beta(), libm::cos(theta), &mut phi);
        // cumulative zonal sums Φ_l
        let mut cum = alloc::vec![0.0; l_max + 1];
        let mut sum = CompensatedSum::default();
        let mut prev: Option<f64> = None;
        let mut last_delta = f64::INFINITY;
        let mut next_check = FIRST_CHECKPOINT.min(l_max);
        for l in 1..=l_max {
            cum[l] = cum[l - 1] + phi[l];
            sum.add(coef[l] * phi[l]);
            if l != next_check {
                continue;
            }
            let tail = coef[l + 1] * (hann_mean(&cum[l / 2 + 1..=l]) - cum[l]);
            let est = mean - sum.value() - tail;
            if let Some(p) = prev {
                let delta = (est - p).abs();
                // two consecutive agreements guard against a chance coincidence;
                // at the cap one agreement has to do
                if delta < tol && (last_delta < tol || l == l_max) {
                    return Ok(SeriesValue { value: est, terms: l, delta: delta.max(last_delta) });
                }
                last_delta = delta;
            }
            prev = Some(est);
            next_check = if l == l_max { l_max } else { (2 * l).min(l_max) };
        }
        Err(Error::NonConvergence { terms: l_max, estimate: last_delta, tol })
    }
}

/// `P_n^{(α,β)}(t)` for `n = 0..out.len()`.
fn jacobi_all(alpha: f64, beta: f64, t: f64, out: &mut [f64]) {
    for (n, slot) in out.iter_mut().enumerate().take(2) {
        *slot = jacobi_unchecked(n, alpha, beta, t);
    }
    for n in 2..out.len() {
        let (a, b, c) = crate::specfun::recurrence_coeffs(n, alpha, beta);
        out[n] = (a * t + b) * out[n - 1] - c * out[n - 2];
    }
}

/// Weighted mean with the Hann window `w_k = sin²(πk/(n+1))`, `k = 1..n`.
fn hann_mean(values: &[f64]) -> f64 {
    let n = values.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for (k, v) in values.iter().enumerate() {
        let s = libm::sin(PI * (k + 1) as f64 / (n + 1) as f64);
        num += s * s * v;
        den += s * s;
    }
    num / den
}

/// The chordal distance at angle `θ` from its zonal expansion.
pub fn chordal_series(space: &SpaceSpec, theta: f64, tol: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(ExpansionCoeffs::full(space, &RadiusMeasure::CanonicalSine)?.chordal(theta, tol)?.value)
}

/// The symmetric-difference distance at angle `θ` from its zonal expansion.
pub fn symdiff_series(space: &SpaceSpec, theta: f64, measure: &RadiusMeasure, tol: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(ExpansionCoeffs::full(space, measure)?.symdiff(theta, tol)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{coeff_a, coeff_c, coeff_m};
    use crate::spaces::{gamma_const, make_space, Family};

    #[test]
    fn table_matches_direct_coefficients() {
        let canon = RadiusMeasure::CanonicalSine;
        for s in SpaceSpec::default_catalog() {
            let t = ExpansionCoeffs::new(&s, &canon, 2000).unwrap();
            for l in [1, 2, 3, 10, 100, 1000, 2001] {
                let rel = |a: f64, b: f64| ((a - b) / b).abs();
                assert!(rel(t.m_l[l], coeff_m(&s, l).unwrap()) < 1e-10, "{s} M_{l}");
                assert!(rel(t.c_l[l], coeff_c(&s, l).unwrap()) < 1e-10, "{s} C_{l}");
                assert!(rel(t.a_l[l], coeff_a(&s, l, &canon).unwrap()) < 1e-10, "{s} A_{l}");
            }
            assert!(t.c_l[1..].iter().all(|c| *c > 0.0));
            assert!(t.a_l[1..].iter().all(|a| *a >= 0.0));
            assert!(t.tail_bound > 0.0 && t.tail_bound.is_finite());
        }
    }

    #[test]
    fn series_examples() {
        let s2 = SpaceSpec::sphere(2).unwrap();
        let s1 = SpaceSpec::sphere(1).unwrap();
        let cp2 = make_space(Family::ComplexProj, 2).unwrap();
        let canon = RadiusMeasure::CanonicalSine;
        assert_eq!(chordal_series(&s2, 0.0, 1e-8).unwrap(), 0.0);
        assert!((chordal_series(&s2, PI, 1e-8).unwrap() - 1.0).abs() < 1e-8);
        let want = libm::sin(PI / 4.0);
        assert!((chordal_series(&cp2, PI / 2.0, 1e-8).unwrap() - want).abs() < 1e-8);
        assert_eq!(symdiff_series(&s2, 0.0, &canon, 1e-8).unwrap(), 0.0);
        assert!((symdiff_series(&s1, PI, &canon, 1e-8).unwrap() - 2.0 / PI).abs() < 1e-8);
        assert!((symdiff_series(&s2, PI / 2.0, &canon, 1e-8).unwrap() - want / 2.0).abs() < 1e-8);
        assert!(chordal_series(&s2, 4.0, 1e-8).is_err());
    }

    #[test]
    fn chordal_series_reproduces_sine_on_grid() {
        for s in SpaceSpec::default_catalog() {
            let t = ExpansionCoeffs::full(&s, &RadiusMeasure::CanonicalSine).unwrap();
            let mut worst = 0.0f64;
            for i in 0..=180 {
                let th = PI * i as f64 / 180.0;
                let v = t.chordal(th, 1e-9).unwrap().value;
                worst = worst.max((v - libm::sin(th / 2.0)).abs());
            }
            assert!(worst < 1e-8, "{s}: {worst:e}");
        }
    }

    #[test]
    fn symdiff_series_is_chordal_over_gamma() {
        for s in SpaceSpec::default_catalog() {
            let t = ExpansionCoeffs::full(&s, &RadiusMeasure::CanonicalSine).unwrap();
            let g = gamma_const(&s);
            for i in 0..=36 {
                let th = PI * i as f64 / 36.0;
                let v = t.symdiff(th, 1e-9).unwrap().value;
                assert!((g * v - libm::sin(th / 2.0)).abs() < 1e-8, "{s} θ={th}");
            }
        }
    }

    #[test]
    fn mean_identity_for_coefficients() {
        for s in SpaceSpec::default_catalog() {
            let t = ExpansionCoeffs::full(&s, &RadiusMeasure::CanonicalSine).unwrap();
            let partial = t.chordal_coef_sum();
            let mean = avg_chordal(&s);
            assert!(partial < mean);
            assert!(mean - partial <= t.tail_bound, "{s}");
            // the l^{-2} tail estimate closes the gap
            let l = t.l_max as f64;
            let tail = t.chordal_coef[t.l_max] * l;
            assert!((partial + tail - mean).abs() < 1e-6 * mean, "{s}");
        }
    }

    #[test]
    fn quadrature_measure_series_converges_at_loose_tolerance() {
        let s2 = SpaceSpec::sphere(2).unwrap();
        let m = RadiusMeasure::quadrature(alloc::vec![0.7, 1.9], alloc::vec![0.5, 1.0]).unwrap();
        let t = ExpansionCoeffs::full(&s2, &m).unwrap();
        // direct value: ½ ξ-average of μ(B(x,r) Δ B(y,r)), checked at the antipode
        // where the balls are disjoint for r < π/2 and complementary overlaps otherwise
        let v = t.symdiff(PI, 1e-4).unwrap().value;
        let direct: f64 = [(0.7, 0.5), (1.9, 1.0)]
            .iter()
            .map(|&(r, w): &(f64, f64)| {
                let vol = crate::spaces::ball_volume(&s2, r).unwrap();
                let inter = (2.0 * vol - 1.0).max(0.0);
                w * (vol - inter)
            })
            .sum();
        assert!((v - direct).abs() < 1e-3, "{v} vs {direct}");
    }
}
