use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model parameters: spin `s`, length scale `beta`, boundary parameter
/// `alpha`, and the derived `g = 1/2 + alpha/beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinParams {
    pub s: f64,
    pub beta: f64,
    pub alpha: f64,
    pub g: f64,
}

impl SpinParams {
    /// Build from `(s, g, beta)`; `alpha = beta (g - 1/2)`.
    pub fn new(s: f64, g: f64, beta: f64) -> Result<Self> {
        let p = SpinParams { s, beta, alpha: beta * (g - 0.5), g };
        p.validate()?;
        Ok(p)
    }

    /// Build from `(s, beta, alpha)`.
    pub fn from_alpha(s: f64, beta: f64, alpha: f64) -> Result<Self> {
        Self::new(s, 0.5 + alpha / beta, beta)
    }

    /// The default point `(s, g, beta) = (1, 1, 1)`.
    pub fn standard() -> Self {
        SpinParams { s: 1.0, beta: 1.0, alpha: 0.5, g: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.5) {
            return Err(Error::InvalidParams(format!("spin s = {} must satisfy s > 1/2", self.s)));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidParams(format!("beta = {} must be positive", self.beta)));
        }
        if !(self.g > 0.0) {
            return Err(Error::InvalidParams(format!(
                "g = {} must be positive (no discrete spectrum)",
                self.g
            )));
        }
        if (self.alpha - self.beta * (self.g - 0.5)).abs() > 1e-12 * (1.0 + self.alpha.abs()) {
            return Err(Error::InvalidParams(format!(
                "alpha = {} inconsistent with g = {} and beta = {}",
                self.alpha, self.g, self.beta
            )));
        }
        Ok(())
    }

    /// Same model with `beta` (and `alpha`) scaled by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        SpinParams { s: self.s, beta: self.beta * c, alpha: self.alpha * c, g: self.g }
    }
}

impl Default for SpinParams {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_is_derived() {
        let p = SpinParams::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.alpha, 0.5);
        let q = SpinParams::from_alpha(1.2, 2.0, 0.6).unwrap();
        assert!((q.g - 0.8).abs() < 1e-15);
    }

    #[test]
    fn small_spin_rejected() {
        let e = SpinParams::new(0.3, 1.0, 1.0).unwrap_err();
        assert!(e.to_string().contains("s > 1/2"));
    }

    #[test]
    fn negative_g_rejected() {
        assert!(SpinParams::new(1.0, -0.2, 1.0).is_err());
    }
}
