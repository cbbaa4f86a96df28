//! Scalar special functions and quadrature.

mod gamma;
mod hyper;
mod incbeta;
mod jacobi;
mod pochhammer;
mod quadrature;

pub use gamma::{beta, gamma, log_beta, log_gamma, log_gamma_signed};
pub use hyper::{hyp3f2_unit, hyp3f2_unit_exact, watson_rhs, Hyp3F2Params};
pub use incbeta::reg_inc_beta;
pub use jacobi::{jacobi_at_one, jacobi_eval};
pub use pochhammer::{falling, falling_factorial, falling_via_rising, rising, rising_factorial};
pub use quadrature::{gauss_jacobi, gauss_legendre_on, jacobi_weight_mass, QuadratureRule};

pub(crate) use gamma::ln_gamma_pos;
pub(crate) use hyper::CompensatedSum;
pub(crate) use jacobi::{first_degree, jacobi_unchecked, recurrence_coeffs};
