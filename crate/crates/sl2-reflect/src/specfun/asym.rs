//! Large-`|z|` asymptotics of the eigenfunctions.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::gamma::log_gamma;
use crate::error::{Error, Result};
use crate::params::SpinParams;

/// Coefficient of `z^{-s + i lambda}` in the large-`|z|` expansion of the
/// eigenfunction, evaluated in log space.
pub fn asym_coeff_c(params: &SpinParams, lambda: f64) -> Result<C64> {
    if lambda.abs() < 1e-14 {
        return Err(Error::Pole(format!("Gamma(2 i lambda) at lambda = {lambda}")));
    }
    let (s, g) = (params.s, params.g);
    let il = C64::new(0.0, lambda);
    let log = log_gamma(2.0 * il)? + log_gamma(C64::new(s + g, 0.0))?
        - log_gamma(s + il)?
        - log_gamma(g + il)?
        + (s - il) * (2.0 * params.beta).ln()
        + C64::new(PI * lambda / 2.0, PI * s / 2.0);
    Ok(log.exp())
}

/// `c(lambda) z^{-s + i lambda} + c(-lambda) z^{-s - i lambda}`.
pub fn psi_asymptotic(params: &SpinParams, lambda: f64, z: C64) -> Result<C64> {
    let il = C64::new(0.0, lambda);
    let lz = z.ln();
    let cp = asym_coeff_c(params, lambda)?;
    let cm = asym_coeff_c(params, -lambda)?;
    Ok(cp * ((il - params.s) * lz).exp() + cm * ((-il - params.s) * lz).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp::hyp2f1;

    #[test]
    fn reflection_identity_for_c() {
        let p = SpinParams::standard();
        let l = 0.7;
        let lhs = (-PI * l).exp() * asym_coeff_c(&p, l).unwrap().norm_sqr();
        let rhs = (PI * l).exp() * asym_coeff_c(&p, -l).unwrap().norm_sqr();
        assert!((lhs - rhs).abs() < 1e-12 * lhs);
    }

    #[test]
    fn value_at_reference_point() {
        // mpmath at 30 digits
        let p = SpinParams::new(1.2, 0.8, 1.0).unwrap();
        let c = asym_coeff_c(&p, 1.0).unwrap();
        let want = C64::new(REF_C.0, REF_C.1);
        assert!((c - want).norm() < 1e-12 * want.norm(), "{c}");
    }
    const REF_C: (f64, f64) = (2.8307845366302202, 1.1495624627263392);

    #[test]
    fn zero_lambda_is_a_pole() {
        assert!(matches!(asym_coeff_c(&SpinParams::standard(), 0.0), Err(Error::Pole(_))));
    }

    #[test]
    fn close_to_exact_at_large_z() {
        let p = SpinParams::standard();
        let l = 0.8;
        let z = C64::from_polar(50.0, PI / 3.0);
        let w = 0.5 + C64::new(0.0, 1.0) * z / (2.0 * p.beta);
        let exact = hyp2f1(C64::new(p.s, l), C64::new(p.s, -l), C64::new(p.s + p.g, 0.0), w).unwrap();
        let approx = psi_asymptotic(&p, l, z).unwrap();
        assert!((approx - exact).norm() <= 0.03 * exact.norm());
    }

    #[test]
    fn symmetric_in_lambda_and_bounded_along_axis() {
        let p = SpinParams::standard();
        let z = C64::new(0.3, 20.0);
        let a = psi_asymptotic(&p, 0.8, z).unwrap();
        let b = psi_asymptotic(&p, -0.8, z).unwrap();
        assert!((a - b).norm() < 1e-14 * a.norm());
        for r in [1e2, 1e4, 1e6] {
            let v = psi_asymptotic(&p, 0.8, C64::new(0.0, r)).unwrap();
            assert!(v.norm() * r.powf(p.s) < 10.0);
        }
    }
}
