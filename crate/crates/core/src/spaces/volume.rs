use core::f64::consts::PI;

use super::SpaceSpec;
use crate::error::domain;
use crate::specfun::{ln_gamma_pos, log_beta, reg_inc_beta};
use crate::Result;

/// Normalized volume `v(r)` of a geodesic ball of radius `r`.
///
/// Substituting `s = sin²(u/2)` in the volume integral leaves the regularized
/// incomplete beta function `I_{sin²(r/2)}(d/2, d0/2)`.
pub fn ball_volume(space: &SpaceSpec, r: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&r) {
        return Err(domain!("ball radius {r} is outside [0, π]"));
    }
    let s = libm::sin(r / 2.0);
    reg_inc_beta((s * s).min(1.0), space.d as f64 / 2.0, space.d0 as f64 / 2.0)
}

/// `γ(S^d) = d √π Γ(d/2) / (2 Γ((d+1)/2))`.
pub fn gamma_const_sphere(d: usize) -> f64 {
    let d = d as f64;
    d * libm::sqrt(PI) / 2.0 * libm::exp(ln_gamma_pos(d / 2.0) - ln_gamma_pos((d + 1.0) / 2.0))
}

/// Both expressions for `γ(Q)`: the direct gamma quotient and the rescaled
/// sphere constant `(d + d0)/(2 d0) · γ(S^{d0})`.
pub fn gamma_const_forms(space: &SpaceSpec) -> (f64, f64) {
    let (d, d0) = (space.d as f64, space.d0 as f64);
    let direct = libm::sqrt(PI) / 4.0
        * (d + d0)
        * libm::exp(ln_gamma_pos(d0 / 2.0) - ln_gamma_pos((d0 + 1.0) / 2.0));
    let via_sphere = (d + d0) / (2.0 * d0) * gamma_const_sphere(space.d0);
    (direct, via_sphere)
}

/// The invariance-principle constant `γ(Q)`.
pub fn gamma_const(space: &SpaceSpec) -> f64 {
    let (direct, via_sphere) = gamma_const_forms(space);
    debug_assert!((direct - via_sphere).abs() <= 1e-13 * direct);
    direct
}

/// Mean chordal distance `⟨τ⟩ = B((d+1)/2, d0/2) / B(d/2, d0/2)`.
pub fn avg_chordal(space: &SpaceSpec) -> f64 {
    let (d, d0) = (space.d as f64, space.d0 as f64);
    let num = log_beta((d + 1.0) / 2.0, d0 / 2.0).expect("positive arguments");
    let den = log_beta(d / 2.0, d0 / 2.0).expect("positive arguments");
    libm::exp(num - den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{make_space, Family};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn endpoint_and_closed_forms() {
        let s1 = SpaceSpec::sphere(1).unwrap();
        let s2 = SpaceSpec::sphere(2).unwrap();
        assert_eq!(ball_volume(&s1, PI).unwrap(), 1.0);
        assert_eq!(ball_volume(&s1, 0.0).unwrap(), 0.0);
        for r in [0.1, 0.7, PI / 2.0, 2.5, 3.1] {
            assert!(close(ball_volume(&s1, r).unwrap(), r / PI, 1e-13));
            let cap = (1.0 - libm::cos(r)) / 2.0;
            assert!(close(ball_volume(&s2, r).unwrap(), cap, 1e-13));
        }
        assert!(ball_volume(&s2, -0.1).is_err());
        assert!(ball_volume(&s2, 3.2).is_err());
        // CP¹ is the 2-sphere
        let cp1 = make_space(Family::ComplexProj, 1).unwrap();
        assert!(close(ball_volume(&cp1, 1.3).unwrap(), ball_volume(&s2, 1.3).unwrap(), 1e-14));
    }

    #[test]
    fn volumes_are_normalized_and_monotone() {
        for space in SpaceSpec::default_catalog() {
            assert!(close(ball_volume(&space, PI).unwrap(), 1.0, 1e-15));
            let mut prev = 0.0;
            for i in 0..=1000 {
                let v = ball_volume(&space, PI * i as f64 / 1000.0).unwrap();
                assert!(v >= prev, "{space} at {i}");
                prev = v;
            }
        }
    }

    #[test]
    fn constants() {
        let s1 = SpaceSpec::sphere(1).unwrap();
        let s2 = SpaceSpec::sphere(2).unwrap();
        let cp2 = make_space(Family::ComplexProj, 2).unwrap();
        assert!(close(gamma_const(&s2), 2.0, 1e-14));
        assert!(close(gamma_const(&s1), PI / 2.0, 1e-14));
        assert!(close(gamma_const(&cp2), 3.0, 1e-14));
        assert!(close(avg_chordal(&s1), 2.0 / PI, 1e-14));
        assert!(close(avg_chordal(&s2), 2.0 / 3.0, 1e-14));
        assert!(close(avg_chordal(&cp2), 0.8, 1e-14));
        for space in SpaceSpec::default_catalog() {
            let (a, b) = gamma_const_forms(&space);
            assert!((a - b).abs() <= 1e-13 * a, "{space}");
            let t = avg_chordal(&space);
            assert!(t > 0.0 && t < 1.0);
        }
    }

    #[test]
    fn mean_chord_matches_radial_integral() {
        // ⟨τ⟩ = ∫ sin(r/2) dv(r), integrated by parts as 1 − ½∫ v(r) cos(r/2) dr
        let (x, w) = crate::specfun::gauss_legendre_on(200, 0.0, PI).unwrap();
        for space in SpaceSpec::default_catalog() {
            let tail: f64 = x
                .iter()
                .zip(&w)
                .map(|(r, wi)| wi * ball_volume(&space, *r).unwrap() * libm::cos(r / 2.0))
                .sum();
            assert!(close(1.0 - tail / 2.0, avg_chordal(&space), 1e-10), "{space}");
        }
    }
}
