//! Discrepancy and metric energies of point distributions on compact
//! rank-one symmetric spaces `Q(d, d0)`: the spheres `S^d` and the projective
//! spaces `RP^n`, `CP^n`, `HP^n`, `OP^2`.
//!
//! The crate is `no_std` (with `alloc`). It contains
//!
//! * [`specfun`]: gamma/beta machinery, Pochhammer symbols, Jacobi polynomials,
//!   Gauss–Jacobi rules and terminating/convergent `3F2(1)` series;
//! * [`spaces`]: the space catalog, point representations, metrics, the
//!   projection embedding, ball volumes and uniform sampling;
//! * [`harmonic`]: zonal spherical functions and the expansions of the chordal
//!   and symmetric-difference metrics;
//! * [`discrepancy`]: pair sums, the ball quadratic discrepancy by closed form,
//!   series and Monte Carlo, and invariance residuals;
//! * [`verify`]: identity-certification suites producing [`verify::VerificationReport`]s.
//!
//! IO, the CLI and parallel drivers live in the companion `crosp` crate.

#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Index loops mirror the recurrences they implement.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod discrepancy;
mod error;
pub mod harmonic;
pub mod octonion;
pub mod spaces;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
