use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::specfun::gauss_legendre_on;
use crate::{Error, Result};

/// Nodes used to discretize the canonical measure `sin r dr`.
pub const CANONICAL_NODES: usize = 64;

/// A finite measure `ξ` on the radii `[0, π]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum RadiusMeasure {
    /// `dξ♮(r) = sin r dr`, total mass 2.
    #[default]
    CanonicalSine,
    /// `Σ w_i δ_{r_i}`.
    Quadrature { nodes: Vec<f64>, weights: Vec<f64> },
}

impl RadiusMeasure {
    /// A discrete measure; radii must lie in `[0, π]` and weights be nonnegative.
    pub fn quadrature(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::Usage(format!(
                "{} radii but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if let Some(r) = nodes.iter().find(|r| !(0.0..=PI).contains(*r)) {
            return Err(Error::Domain(format!("radius {r} is outside [0, π]")));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::Domain(format!("weight {w} is not a nonnegative number")));
        }
        Ok(Self::Quadrature { nodes, weights })
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self, Self::CanonicalSine)
    }

    /// Total mass `ξ([0, π])`.
    pub fn mass(&self) -> f64 {
        match self {
            Self::CanonicalSine => 2.0,
            Self::Quadrature { weights, .. } => weights.iter().sum(),
        }
    }

    /// `(r_i, w_i)` pairs with `∫ f dξ ≈ Σ w_i f(r_i)`. The canonical measure uses
    /// a Gauss–Legendre rule on `[0, π]` with the density folded into the weights.
    pub fn discretize(&self) -> Vec<(f64, f64)> {
        match self {
            Self::CanonicalSine => {
                let (x, w) = gauss_legendre_on(CANONICAL_NODES, 0.0, PI).expect("fixed valid rule");
                x.into_iter().zip(w).map(|(r, wi)| (r, wi * libm::sin(r))).collect()
            }
            Self::Quadrature { nodes, weights } => nodes.iter().copied().zip(weights.iter().copied()).collect(),
        }
    }

    /// `∫ f dξ` on the discretization above.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.discretize().into_iter().map(|(r, w)| w * f(r)).sum()
    }
}
