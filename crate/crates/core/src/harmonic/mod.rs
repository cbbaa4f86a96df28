//! Zonal spherical functions and the expansions of the chordal and
//! symmetric-difference metrics in them.

mod closed;
mod series;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::domain;
use crate::spaces::{ball_volume, RadiusMeasure, SpaceSpec};
use crate::specfun::{first_degree, jacobi_at_one, jacobi_unchecked, ln_gamma_pos, recurrence_coeffs};
use crate::{Error, Result};

pub use closed::{
    jacobi_sq_integral, lemma51_value, t_closed, t_closed_exact, w_closed, w_closed_printed, w_sum,
    IntegralRoute,
};
pub use series::{chordal_series, symdiff_series, ExpansionCoeffs, SeriesValue, L_MAX};

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(domain!("angle {theta} is outside [0, π]"));
    }
    Ok(())
}

/// `φ_l(θ) = P_l^{(α,β)}(cos θ) / P_l^{(α,β)}(1)` with `α = d/2 − 1`, `β = d0/2 − 1`.
pub fn zonal_phi(space: &SpaceSpec, l: usize, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(1.0);
    }
    let (a, b) = (space.alpha(), space.beta());
    Ok(jacobi_unchecked(l, a, b, libm::cos(theta)) / jacobi_at_one(l, a, b)?)
}

/// Fills `out[l] = φ_l(t)` for `l = 0..out.len()` by the recurrence for the
/// normalized polynomials, which never forms the large values `P_l(1)`.
pub(crate) fn zonal_all(alpha: f64, beta: f64, t: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = first_degree(alpha, beta, t) / (alpha + 1.0);
    for l in 2..out.len() {
        let (a, b, c) = recurrence_coeffs(l, alpha, beta);
        let lf = l as f64;
        let r1 = lf / (alpha + lf);
        let r2 = r1 * (lf - 1.0) / (alpha + lf - 1.0);
        out[l] = (a * t + b) * r1 * out[l - 1] - c * r2 * out[l - 2];
    }
}

fn half_sum(space: &SpaceSpec) -> f64 {
    (space.d + space.d0) as f64 / 2.0
}

fn require_positive(l: usize) -> Result<()> {
    if l == 0 {
        return Err(domain!("expansion coefficients are indexed from l = 1"));
    }
    Ok(())
}

/// `M_l = (2l − 1 + (d+d0)/2) Γ(l+1) Γ(l − 1 + (d+d0)/2) / (Γ(l + d/2) Γ(l + d0/2))`.
pub fn coeff_m(space: &SpaceSpec, l: usize) -> Result<f64> {
    require_positive(l)?;
    let (lf, h) = (l as f64, half_sum(space));
    let (d, d0) = (space.d as f64, space.d0 as f64);
    let ln = ln_gamma_pos(lf + 1.0) + ln_gamma_pos(lf - 1.0 + h)
        - ln_gamma_pos(lf + d / 2.0)
        - ln_gamma_pos(lf + d0 / 2.0);
    Ok((2.0 * lf - 1.0 + h) * libm::exp(ln))
}

/// The two expressions for `C_l`, as `(beta_form, gamma_form)`, plus a bound on
/// the rounding error of the log-gamma sums behind them.
///
/// The beta form is `B((d+1)/2, l + d0/2) (1/2)_{l−1} P_l^{(d/2−1, d0/2−1)}(1) / l!`.
/// Expanding `P_l(1)` turns it into a pure gamma quotient with `(l!)^{−2}`.
pub fn coeff_c_forms(space: &SpaceSpec, l: usize) -> Result<(f64, f64, f64)> {
    require_positive(l)?;
    let lf = l as f64;
    let (d, d0) = (space.d as f64, space.d0 as f64);
    let terms_beta = [
        ln_gamma_pos((d + 1.0) / 2.0),
        ln_gamma_pos(lf + d0 / 2.0),
        -ln_gamma_pos((d + 1.0) / 2.0 + lf + d0 / 2.0),
        -ln_gamma_pos(lf + 1.0),
        ln_gamma_pos(lf - 0.5),
        -ln_gamma_pos(0.5),
    ];
    let beta_form = libm::exp(terms_beta.iter().sum::<f64>()) * jacobi_at_one(l, space.alpha(), space.beta())?;
    let terms_gamma = [
        -2.0 * ln_gamma_pos(lf + 1.0),
        ln_gamma_pos(lf - 0.5),
        -ln_gamma_pos(0.5),
        ln_gamma_pos((d + 1.0) / 2.0),
        ln_gamma_pos(lf + d / 2.0),
        ln_gamma_pos(lf + d0 / 2.0),
        -ln_gamma_pos(lf + 0.5 + (d + d0) / 2.0),
        -ln_gamma_pos(d / 2.0),
    ];
    let gamma_form = libm::exp(terms_gamma.iter().sum::<f64>());
    let magnitude: f64 = terms_beta.iter().chain(&terms_gamma).map(|t| t.abs()).sum();
    let tol = (1e-11f64).max(8.0 * f64::EPSILON * magnitude);
    Ok((beta_form, gamma_form, tol))
}

/// `C_l`, checked against its second expression.
pub fn coeff_c(space: &SpaceSpec, l: usize) -> Result<f64> {
    let (a, b, tol) = coeff_c_forms(space, l)?;
    if (a - b).abs() > tol * a.abs() {
        return Err(Error::InternalConsistency(format!(
            "C_{l} on {space}: beta form {a:e} and gamma form {b:e} disagree"
        )));
    }
    Ok(a)
}

/// `A_l(ξ) = ∫ (P_{l−1}^{(d/2, d0/2)}(cos r))² sin^{2d}(r/2) cos^{2d0}(r/2) dξ(r)`.
///
/// For `sin r dr` the substitution `t = cos r` gives `2^{−d−d0}` times the
/// Jacobi square integral at `n = l − 1, α = d/2, β = d0/2`, evaluated in
/// closed form. Discrete measures are summed at their nodes.
pub fn coeff_a(space: &SpaceSpec, l: usize, measure: &RadiusMeasure) -> Result<f64> {
    require_positive(l)?;
    let (d, d0) = (space.d as f64, space.d0 as f64);
    match measure {
        RadiusMeasure::CanonicalSine => Ok(libm::exp2(-(d + d0))
            * jacobi_sq_integral(l - 1, d / 2.0, d0 / 2.0, IntegralRoute::Closed)?),
        RadiusMeasure::Quadrature { nodes, weights } => Ok(nodes
            .iter()
            .zip(weights)
            .map(|(&r, &w)| w * a_integrand(space, l - 1, r))
            .sum()),
    }
}

/// `A_l(ξ♮)` from Gauss–Jacobi quadrature of the transformed integral.
pub fn coeff_a_quadrature(space: &SpaceSpec, l: usize) -> Result<f64> {
    require_positive(l)?;
    let (d, d0) = (space.d as f64, space.d0 as f64);
    Ok(libm::exp2(-(d + d0)) * jacobi_sq_integral(l - 1, d / 2.0, d0 / 2.0, IntegralRoute::Quadrature)?)
}

fn a_integrand(space: &SpaceSpec, n: usize, r: f64) -> f64 {
    let (d, d0) = (space.d as f64, space.d0 as f64);
    let p = jacobi_unchecked(n, d / 2.0, d0 / 2.0, libm::cos(r));
    let (s, c) = (libm::sin(r / 2.0), libm::cos(r / 2.0));
    p * p * libm::pow(s, 2.0 * d) * libm::pow(c, 2.0 * d0)
}

/// `⟨θ^Δ(ξ)⟩ = ∫ (v(r) − v(r)²) dξ(r)`.
pub fn avg_symdiff(space: &SpaceSpec, measure: &RadiusMeasure) -> f64 {
    measure.integrate(|r| {
        let v = ball_volume(space, r.clamp(0.0, PI)).expect("radius in range");
        v - v * v
    })
}

/// Normalizing constant `B(d/2, d0/2)` of the symmetric-difference expansion.
pub(crate) fn beta_d(space: &SpaceSpec) -> f64 {
    let (d, d0) = (space.d as f64, space.d0 as f64);
    libm::exp(ln_gamma_pos(d / 2.0) + ln_gamma_pos(d0 / 2.0) - ln_gamma_pos((d + d0) / 2.0))
}

/// Zonal values `φ_0..φ_L` at many angles, reused by verification.
pub fn zonal_table(space: &SpaceSpec, l_max: usize, theta: f64) -> Result<Vec<f64>> {
    check_theta(theta)?;
    let mut out = alloc::vec![0.0; l_max + 1];
    zonal_all(space.alpha(), space.beta(), libm::cos(theta), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{gamma_const, make_space, Family};
    use crate::specfun::gauss_jacobi;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn zonal_examples() {
        let s2 = SpaceSpec::sphere(2).unwrap();
        let cp2 = make_space(Family::ComplexProj, 2).unwrap();
        for th in [0.0, 0.4, 1.9, PI] {
            assert!((zonal_phi(&s2, 1, th).unwrap() - libm::cos(th)).abs() < 1e-15);
            let want = (3.0 * libm::cos(th) + 1.0) / 4.0;
            assert!((zonal_phi(&cp2, 1, th).unwrap() - want).abs() < 1e-15);
        }
        for s in SpaceSpec::default_catalog() {
            assert_eq!(zonal_phi(&s, 7, 0.0).unwrap(), 1.0);
        }
        assert!(zonal_phi(&s2, 1, -0.1).is_err());
    }

    #[test]
    fn normalized_recurrence_matches_direct_ratio() {
        for s in SpaceSpec::default_catalog() {
            for th in [0.01, 0.8, 2.2, PI] {
                let tab = zonal_table(&s, 60, th).unwrap();
                for (l, v) in tab.iter().enumerate() {
                    assert!((v - zonal_phi(&s, l, th).unwrap()).abs() < 1e-12, "{s} l={l}");
                    assert!(v.abs() <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn m_examples() {
        let s2 = SpaceSpec::sphere(2).unwrap();
        let cp2 = make_space(Family::ComplexProj, 2).unwrap();
        for l in 1..30 {
            assert!(rel(coeff_m(&s2, l).unwrap(), 2.0 * l as f64 + 1.0) < 1e-13);
        }
        assert!(rel(coeff_m(&cp2, 1).unwrap(), 4.0) < 1e-14);
        assert!(coeff_m(&s2, 0).is_err());
    }

    #[test]
    fn c_examples_and_forms() {
        let s2 = SpaceSpec::sphere(2).unwrap();
        assert!(rel(coeff_c(&s2, 1).unwrap(), 4.0 / 15.0) < 1e-14);
        for s in SpaceSpec::default_catalog() {
            for l in (1..=40).chain([500, 5000, 10_001]) {
                let c = coeff_c(&s, l).unwrap();
                assert!(c > 0.0 && c.is_finite());
            }
        }
    }

    #[test]
    fn printed_gamma_form_with_single_factorial_is_wrong() {
        // the beta form with one factorial less in the gamma form differs by l!
        let s2 = SpaceSpec::sphere(2).unwrap();
        let (a, b, _) = coeff_c_forms(&s2, 2).unwrap();
        assert!(rel(b * 2.0, a) > 0.5);
    }

    /// Projects `√((1−t)/2)` on the Jacobi basis. The square root is folded
    /// into the weight, so a Gauss–Jacobi rule for `(α + 1/2, β)` is exact.
    fn chordal_projection(space: &SpaceSpec, l: usize) -> f64 {
        let (a, b) = (space.alpha(), space.beta());
        let shifted = gauss_jacobi(l + 2, a + 0.5, b).unwrap();
        let plain = gauss_jacobi(l + 2, a, b).unwrap();
        let p1 = jacobi_at_one(l, a, b).unwrap();
        let num = shifted.integrate(|t| jacobi_unchecked(l, a, b, t)) / core::f64::consts::SQRT_2;
        let den = plain.integrate(|t| jacobi_unchecked(l, a, b, t).powi(2));
        // τ = const − Σ (M_l C_l / 2) φ_l
        -2.0 * num / den * p1
    }

    #[test]
    fn c_matches_projection_oracle() {
        for s in SpaceSpec::default_catalog() {
            for l in 1..=12 {
                let mc = coeff_m(&s, l).unwrap() * coeff_c(&s, l).unwrap();
                let proj = chordal_projection(&s, l);
                assert!(rel(proj, mc) < 1e-9, "{s} l={l}: {proj} vs {mc}");
            }
        }
        // S¹: M_l C_l = 8/(π(4l²−1))
        let s1 = SpaceSpec::sphere(1).unwrap();
        for l in 1..20 {
            let lf = l as f64;
            let want = 8.0 / (PI * (4.0 * lf * lf - 1.0));
            assert!(rel(coeff_m(&s1, l).unwrap() * coeff_c(&s1, l).unwrap(), want) < 1e-13);
        }
    }

    #[test]
    fn a_examples() {
        let s2 = SpaceSpec::sphere(2).unwrap();
        let canon = RadiusMeasure::CanonicalSine;
        assert!(rel(coeff_a(&s2, 1, &canon).unwrap(), 1.0 / 15.0) < 1e-14);
        let zero = RadiusMeasure::quadrature(alloc::vec![], alloc::vec![]).unwrap();
        assert_eq!(coeff_a(&s2, 3, &zero).unwrap(), 0.0);
        let s3 = SpaceSpec::sphere(3).unwrap();
        let c = coeff_a(&s3, 3, &canon).unwrap();
        assert!(rel(coeff_a_quadrature(&s3, 3).unwrap(), c) < 1e-10);
        // the canonical measure discretized by Gauss–Legendre reproduces the closed form
        let disc = canon.discretize();
        let (r, w): (Vec<f64>, Vec<f64>) = disc.into_iter().unzip();
        let q = RadiusMeasure::quadrature(r, w).unwrap();
        for l in 1..6 {
            assert!(rel(coeff_a(&s3, l, &q).unwrap(), coeff_a(&s3, l, &canon).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn coefficient_chain() {
        let canon = RadiusMeasure::CanonicalSine;
        for s in SpaceSpec::default_catalog() {
            for l in 1..=20 {
                let lf = l as f64;
                let lhs = gamma_const(&s) / (lf * lf) / beta_d(&s) * coeff_a(&s, l, &canon).unwrap();
                let rhs = coeff_c(&s, l).unwrap() / 2.0;
                assert!(rel(lhs, rhs) < 1e-9, "{s} l={l}");
            }
        }
    }

    #[test]
    fn avg_symdiff_examples() {
        let canon = RadiusMeasure::CanonicalSine;
        let s1 = SpaceSpec::sphere(1).unwrap();
        let s2 = SpaceSpec::sphere(2).unwrap();
        assert!((avg_symdiff(&s1, &canon) - 4.0 / (PI * PI)).abs() < 1e-14);
        assert!((avg_symdiff(&s2, &canon) - 1.0 / 3.0).abs() < 1e-14);
        let zero = RadiusMeasure::quadrature(alloc::vec![], alloc::vec![]).unwrap();
        assert_eq!(avg_symdiff(&s2, &zero), 0.0);
    }
}
