//! Complex special functions: log-gamma, Gauss 2F1, its Barnes integral,
//! large-argument asymptotics, and the one-dimensional quadrature rules they
//! share with the rest of the crate.

pub mod asym;
pub mod barnes;
pub mod gamma;
pub mod hyp;
pub mod quad;

pub use asym::{asym_coeff_c, psi_asymptotic};
pub use barnes::{hyp2f1_barnes, ContourSpec};
pub use gamma::{gamma, gamma_ratio, log_gamma, rgamma};
pub use hyp::{hyp2f1, hyp2f1_deriv, hyp2f1_method, Hyp2F1Args, Method};

/// The pole guard applied to every Gamma argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaArg(num_complex::Complex64);

impl GammaArg {
    pub fn new(value: num_complex::Complex64) -> crate::Result<Self> {
        if gamma::pole_index(value).is_some() {
            return Err(crate::Error::Pole(format!("{value}")));
        }
        Ok(GammaArg(value))
    }

    pub fn value(&self) -> num_complex::Complex64 {
        self.0
    }

    pub fn log_gamma(&self) -> num_complex::Complex64 {
        gamma::log_gamma_unchecked(self.0)
    }
}
