//! Spectral weights for the half-plane and half-line transforms.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma;
use crate::{SpinParams, C64};

/// `mu` (half-plane), `mu_hat` (half-line) and the half-line density `m`.
#[derive(Debug, Clone, Copy)]
pub struct SpectralMeasure {
    pub params: SpinParams,
}

fn lg(z: C64) -> C64 {
    log_gamma(z).expect("log-gamma argument away from poles")
}

impl SpectralMeasure {
    pub fn new(params: SpinParams) -> Self {
        SpectralMeasure { params }
    }

    /// `log |Gamma(s + i l) Gamma(g + i l) / (Gamma(s + g) Gamma(2 i l))|^2`;
    /// `-inf` at `l = 0`.
    fn log_core(&self, lambda: f64) -> f64 {
        if lambda == 0.0 {
            return f64::NEG_INFINITY;
        }
        let (s, g) = (self.params.s, self.params.g);
        let il = C64::new(0.0, lambda);
        let v = lg(s + il) + lg(g + il) - lg(C64::new(s + g, 0.0)) - lg(2.0 * il);
        2.0 * v.re
    }

    fn log_bridge(&self, lambda: f64) -> f64 {
        let s = self.params.s;
        2.0 * lg(C64::new(s, lambda)).re - 2.0 * s * (2.0 * self.params.beta).ln() - lg(C64::new(2.0 * s, 0.0)).re
    }

    /// `mu(l) = |Gamma^2(s + i l) Gamma(g + i l) / (Gamma(s + g) Gamma(2 i l))|^2
    /// / (4 pi (2 beta)^{2s} Gamma(2s))`, which vanishes at `l = 0`.
    pub fn mu(&self, lambda: f64) -> f64 {
        (self.log_core(lambda) + self.log_bridge(lambda)).exp() / (4.0 * PI)
    }

    /// `mu_hat(l) = |Gamma(s + i l) Gamma(g + i l) / (Gamma(s + g) Gamma(2 i l))|^2 / (4 pi)`.
    pub fn mu_hat(&self, lambda: f64) -> f64 {
        self.log_core(lambda).exp() / (4.0 * PI)
    }

    /// `m(y) = y^{s + g - 1} (1 + y)^{s - g}`.
    pub fn m(&self, y: f64) -> f64 {
        let (s, g) = (self.params.s, self.params.g);
        y.powf(s + g - 1.0) * (1.0 + y).powf(s - g)
    }

    /// `|Gamma(s + i l)|^2 / ((2 beta)^{2s} Gamma(2s))`, the ratio `mu / mu_hat`
    /// and the eigenvalue of `U^dagger U`.
    pub fn bridge(&self, lambda: f64) -> f64 {
        self.log_bridge(lambda).exp()
    }
}

/// `mu(l)^{-1}`: the normalisation in
/// `<Psi_rho|Psi_l> = mu^{-1}(l) (delta(l - rho) + delta(l + rho)) / 2`.
pub fn orthogonality_coefficient(params: &SpinParams, lambda: f64) -> Result<f64> {
    if !lambda.is_finite() {
        return Err(Error::InvalidParams(format!("lambda = {lambda}")));
    }
    if lambda.abs() < 1e-300 {
        return Err(Error::Pole("mu^{-1} is singular at lambda = 0 (Gamma(2 i lambda))".into()));
    }
    Ok(1.0 / SpectralMeasure::new(*params).mu(lambda))
}

/// Coefficient of `delta(l - rho) + delta(l + rho)` as it comes out of the
/// epsilon-regularised calculation:
/// `2 pi (2 beta)^{2s} Gamma(2s) Gamma^2(g + s) Gamma(±2 i l) / (Gamma(g ± i l) Gamma^2(s ± i l))`,
/// with every `±` pair multiplied out rather than written as a modulus.
pub fn delta_coefficient(params: &SpinParams, lambda: f64) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::Pole("Gamma(2 i lambda) at lambda = 0".into()));
    }
    let (s, g, b) = (params.s, params.g, params.beta);
    let il = C64::new(0.0, lambda);
    let mut v = C64::new(2.0 * s * (2.0 * b).ln(), 0.0) + lg(C64::new(2.0 * s, 0.0)) + 2.0 * lg(C64::new(g + s, 0.0));
    for sign in [1.0, -1.0] {
        v += lg(2.0 * sign * il) - lg(g + sign * il) - 2.0 * lg(s + sign * il);
    }
    let out = 2.0 * PI * v.exp();
    Ok(out.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma;

    #[test]
    fn even_and_positive() {
        let m = SpectralMeasure::new(SpinParams::new(1.3, 0.6, 1.7).unwrap());
        for l in [0.05, 0.4, 2.0, 9.0] {
            assert!(m.mu(l) > 0.0);
            assert_eq!(m.mu(l), m.mu(-l));
        }
        assert_eq!(m.mu(0.0), 0.0);
    }

    #[test]
    fn inverse_is_consistent() {
        let p = SpinParams::standard();
        let m = SpectralMeasure::new(p);
        for l in [0.3, 1.0, 4.0] {
            let v = orthogonality_coefficient(&p, l).unwrap() * m.mu(l);
            assert!((v - 1.0).abs() < 1e-13);
        }
        assert!(matches!(orthogonality_coefficient(&p, 0.0), Err(Error::Pole(_))));
    }

    #[test]
    fn delta_coefficient_is_half_the_inverse_measure() {
        let p = SpinParams::new(1.2, 0.9, 1.3).unwrap();
        for l in [0.2, 1.0, 3.5] {
            let a = delta_coefficient(&p, l).unwrap();
            let b = 0.5 * orthogonality_coefficient(&p, l).unwrap();
            assert!((a - b).abs() < 1e-12 * b, "{a} {b}");
        }
    }

    #[test]
    fn unit_point_from_plain_gammas() {
        // (s, g, beta, lambda) = (1, 1, 1, 1), direct Gamma products
        let p = SpinParams::standard();
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let core = gamma(one + i) * gamma(one + i) * gamma(one + i) / (gamma(2.0 * one) * gamma(2.0 * i));
        let want = core.norm_sqr() / (4.0 * PI * 4.0 * gamma(2.0 * one).re);
        let got = SpectralMeasure::new(p).mu(1.0);
        assert!((got - want).abs() < 1e-12 * want, "{got} {want}");
        // |Gamma(1 + i)|^2 = pi / sinh(pi), |Gamma(2i)|^2 = pi / (2 sinh(2 pi))
        let closed = (PI / PI.sinh()).powi(3) / (PI / (2.0 * (2.0 * PI).sinh())) / (16.0 * PI);
        assert!((got - closed).abs() < 1e-12 * closed);
    }

    #[test]
    fn bridge_identity() {
        let p = SpinParams::new(0.8, 1.6, 0.6).unwrap();
        let m = SpectralMeasure::new(p);
        for l in [0.05, 0.7, 3.0, 12.0] {
            let g = gamma(C64::new(p.s, l)).norm_sqr();
            let want = g / ((2.0 * p.beta).powf(2.0 * p.s) * gamma(C64::new(2.0 * p.s, 0.0)).re);
            let ratio = m.mu(l) / m.mu_hat(l);
            assert!((ratio - want).abs() < 1e-12 * want);
        }
    }
}
