//! Reflection operator, hypergeometric eigenfunctions and the half-plane
//! diagram calculus for the one-particle open SL(2,R) spin chain.
//!
//! Modules are layered bottom-up: [`specfun`] and [`halfplane`] supply the
//! numerics, [`algebra`] the exact operator identities on polynomials,
//! [`reflection`] and [`spectral`] the operators and eigenfunctions,
//! [`diagrams`] the symbolic rewrite engine, and [`cli`] the verification
//! suites behind the `reflect` binary.

pub mod algebra;
pub mod cli;
pub mod diagrams;
pub mod error;
pub mod halfplane;
pub mod params;
pub mod reflection;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use params::SpinParams;

/// The imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

/// Shorthand for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
