//! Real and complex special functions used throughout the crate.
//!
//! Everything here is implemented from scratch in double precision:
//! complex log-gamma, Bessel functions of the first kind of real order,
//! the Airy function, orthonormal Laguerre wavefunctions and
//! Gauss-Legendre rules.

mod airy;
mod bessel;
mod gamma;
mod laguerre;
pub mod quadrature;

pub use airy::{airy_ai, airy_ai_series};
pub use bessel::{bessel_j, bessel_j_asymptotic, bessel_j_series, bessel_j_with_derivative, bessel_y};
pub use gamma::{gamma, ln_gamma, ln_gamma_signed, log_gamma_complex, rgamma, ComplexValue};
pub use laguerre::{laguerre_psi, laguerre_psi_all, laguerre_psi_derivative};
pub use quadrature::{gauss_legendre, integrate_adaptive, QuadratureRule};
