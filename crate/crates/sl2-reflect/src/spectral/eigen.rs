//! Eigenfunctions of the one-particle Hamiltonian and its action.

use crate::error::{Error, Result};
use crate::halfplane::{AnalyticFn, HPoint};
use crate::specfun::hyp::{hyp2f1, hyp2f1_deriv};
use crate::{SpinParams, C64, I};

/// Hypergeometric variable `w = 1/2 + i z/(2 beta)`.
#[inline]
pub fn to_w(params: &SpinParams, z: C64) -> C64 {
    0.5 + I * z / (2.0 * params.beta)
}

/// Inverse of [`to_w`].
#[inline]
pub fn from_w(params: &SpinParams, w: C64) -> C64 {
    -2.0 * I * params.beta * (w - 0.5)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("spectral parameter {lambda} must be real and finite")))
    }
}

fn abc(params: &SpinParams, lambda: f64) -> (C64, C64, C64) {
    let s = params.s;
    (C64::new(s, lambda), C64::new(s, -lambda), C64::new(s + params.g, 0.0))
}

/// `Psi_lambda(z) = 2F1(s + i lambda, s - i lambda; s + g; 1/2 + i z/(2 beta))`.
pub fn psi(params: &SpinParams, lambda: f64, z: HPoint) -> Result<C64> {
    check_lambda(lambda)?;
    let (a, b, c) = abc(params, lambda);
    hyp2f1(a, b, c, to_w(params, z.z()))
}

/// `Psi_lambda` together with analytic first and second derivatives.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    pub params: SpinParams,
    pub lambda: f64,
    f: AnalyticFn,
}

impl Eigenfunction {
    pub fn new(params: SpinParams, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let (a, b, c) = abc(&params, lambda);
        let k = I / (2.0 * params.beta);
        let nan = C64::new(f64::NAN, f64::NAN);
        let p = params;
        let f = AnalyticFn::new(move |z| hyp2f1(a, b, c, to_w(&p, z)).unwrap_or(nan), params.s)
            .with_deriv1(move |z| k * hyp2f1_deriv(a, b, c, to_w(&p, z), 1).unwrap_or(nan))
            .with_deriv2(move |z| k * k * hyp2f1_deriv(a, b, c, to_w(&p, z), 2).unwrap_or(nan));
        Ok(Eigenfunction { params, lambda, f })
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.f.eval(z)
    }

    pub fn deriv(&self, z: C64, order: usize) -> Result<C64> {
        self.f.deriv_strict(z, order)
    }

    /// The underlying function handle, decay exponent `s`.
    pub fn as_fn(&self) -> &AnalyticFn {
        &self.f
    }
}

/// `Phi_lambda(y) = Psi_lambda(i beta (1 + 2y)) = 2F1(s + i lambda, s - i lambda; s + g; -y)`.
#[derive(Debug, Clone, Copy)]
pub struct HalfLineEigenfunction {
    pub params: SpinParams,
    pub lambda: f64,
}

impl HalfLineEigenfunction {
    pub fn new(params: SpinParams, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(HalfLineEigenfunction { params, lambda })
    }

    /// Real for real `y` and `lambda`; the imaginary part is rounding noise
    /// and is dropped.
    pub fn eval(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::InvalidParams(format!("half-line point y = {y} must be >= 0")));
        }
        let (a, b, c) = abc(&self.params, self.lambda);
        Ok(hyp2f1(a, b, c, C64::new(-y, 0.0))?.re)
    }
}

/// `(z^2 + beta^2) f'' + (2s + 1) z f' + 2i alpha f' + s^2 f`, with Cauchy-circle
/// derivatives when `f` carries no analytic ones.
pub fn apply_hamiltonian(params: &SpinParams, f: &AnalyticFn, z: HPoint) -> C64 {
    let z = z.z();
    hamiltonian_from_jet(params, z, f.eval(z), f.deriv(z, 1), f.deriv(z, 2))
}

/// [`apply_hamiltonian`] without the numerical fallback.
pub fn apply_hamiltonian_strict(params: &SpinParams, f: &AnalyticFn, z: HPoint) -> Result<C64> {
    let z = z.z();
    Ok(hamiltonian_from_jet(params, z, f.eval(z), f.deriv_strict(z, 1)?, f.deriv_strict(z, 2)?))
}

fn hamiltonian_from_jet(params: &SpinParams, z: C64, f: C64, d1: C64, d2: C64) -> C64 {
    let (s, b) = (params.s, params.beta);
    (z * z + b * b) * d2 + ((2.0 * s + 1.0) * z + 2.0 * I * params.alpha) * d1 + s * s * f
}

/// The same operator in the hypergeometric variable:
/// `-w(1-w) g'' - [(s + g) - (2s + 1) w] g' + s^2 g` for `g` given as a
/// function of `w` with analytic derivatives.
pub fn apply_hamiltonian_w(params: &SpinParams, g: &AnalyticFn, w: C64) -> Result<C64> {
    let s = params.s;
    let (v, d1, d2) = (g.eval(w), g.deriv_strict(w, 1)?, g.deriv_strict(w, 2)?);
    Ok(-w * (1.0 - w) * d2 - ((s + params.g) - (2.0 * s + 1.0) * w) * d1 + s * s * v)
}

/// `|H Psi + lambda^2 Psi| / |Psi|` at `z`.
pub fn eigen_residual(e: &Eigenfunction, z: HPoint) -> Result<f64> {
    let h = apply_hamiltonian_strict(&e.params, e.as_fn(), z)?;
    let v = e.eval(z.z());
    Ok((h + e.lambda * e.lambda * v).norm() / v.norm().max(f64::MIN_POSITIVE))
}

/// Deterministic scattered points in the box `[-x_max, x_max] x (0, y_max]`
/// (additive golden-ratio recurrence).
pub fn scattered_points(n: usize, x_max: f64, y_max: f64, seed: u64) -> Vec<HPoint> {
    let (g1, g2) = (0.754_877_666_246_692_7, 0.569_840_290_998_053_3);
    let off = (seed as f64 * 0.318_309_886_183_790_7).fract();
    (1..=n)
        .map(|k| {
            let u = (off + g1 * k as f64).fract();
            let v = (off + g2 * k as f64).fract();
            HPoint::new(C64::new(x_max * (2.0 * u - 1.0), y_max * (0.02 + 0.98 * v))).unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::eigenfunction_via_reflection;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn symmetric_in_lambda() {
        let p = SpinParams::standard();
        let z = HPoint::new(c(0.0, 1.0)).unwrap();
        let a = psi(&p, 0.9, z).unwrap();
        assert!((a - psi(&p, -0.9, z).unwrap()).norm() <= 1e-12);
        assert!(a.is_finite());
        assert!(psi(&p, f64::INFINITY, z).is_err());
    }

    #[test]
    fn agrees_with_reflection_route() {
        let p = SpinParams::standard();
        let z = HPoint::new(c(0.0, 2.0)).unwrap();
        let a = psi(&p, 0.8, z).unwrap();
        let b = eigenfunction_via_reflection(&p, 0.8, z).unwrap();
        assert!((a - b).norm() <= 1e-9, "{a} {b}");
    }

    #[test]
    fn hamiltonian_of_constant() {
        let p = SpinParams::new(1.3, 0.7, 2.0).unwrap();
        let v = apply_hamiltonian(&p, &AnalyticFn::constant(c(1.0, 0.0)), HPoint::new(c(0.2, 0.5)).unwrap());
        assert!((v - 1.69).norm() < 1e-14);
    }

    #[test]
    fn eigen_equation() {
        let p = SpinParams::new(1.2, 0.8, 1.5).unwrap();
        for lambda in [0.3, 0.8, 1.5, 3.0] {
            let e = Eigenfunction::new(p, lambda).unwrap();
            for z in scattered_points(10, 3.0, 3.0, 7) {
                let r = eigen_residual(&e, z).unwrap();
                assert!(r <= 1e-8, "lambda {lambda} z {:?}: {r}", z);
            }
        }
    }

    #[test]
    fn derivative_handles_match_differences() {
        let e = Eigenfunction::new(SpinParams::standard(), 1.1).unwrap();
        let z = c(0.4, 0.9);
        let h = 1e-5;
        let fd1 = (e.eval(z + h) - e.eval(z - h)) / (2.0 * h);
        assert!((e.deriv(z, 1).unwrap() - fd1).norm() < 1e-6);
        let h = 1e-4;
        let fd2 = (e.eval(z + h) - 2.0 * e.eval(z) + e.eval(z - h)) / (h * h);
        assert!((e.deriv(z, 2).unwrap() - fd2).norm() < 1e-6);
    }

    #[test]
    fn w_form_matches_z_form() {
        let p = SpinParams::new(1.1, 1.4, 0.7).unwrap();
        let (sh, ex) = (c(0.3, 2.0), c(1.3, 0.2));
        let f = AnalyticFn::power(sh, ex);
        // g(w) = f(z(w)), dz/dw = -2 i beta
        let k = -2.0 * I * p.beta;
        let g = AnalyticFn::new(move |w| (-ex * (from_w(&p, w) + sh).ln()).exp(), 0.0)
            .with_deriv1(move |w| k * -ex * (-(ex + 1.0) * (from_w(&p, w) + sh).ln()).exp())
            .with_deriv2(move |w| k * k * ex * (ex + 1.0) * (-(ex + 2.0) * (from_w(&p, w) + sh).ln()).exp());
        for z in scattered_points(5, 2.0, 2.0, 1) {
            let a = apply_hamiltonian_strict(&p, &f, z).unwrap();
            let b = apply_hamiltonian_w(&p, &g, to_w(&p, z.z())).unwrap();
            assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()), "{a} {b}");
        }
    }

    #[test]
    fn half_line_is_real_and_matches_psi() {
        let p = SpinParams::new(1.0, 1.3, 0.8).unwrap();
        let phi = HalfLineEigenfunction::new(p, 0.6).unwrap();
        for y in [0.0, 0.5, 3.0, 40.0] {
            let z = HPoint::new(c(0.0, p.beta * (1.0 + 2.0 * y))).unwrap();
            let v = psi(&p, 0.6, z).unwrap();
            assert!(v.im.abs() < 1e-12 * (1.0 + v.norm()));
            assert!((phi.eval(y).unwrap() - v.re).abs() < 1e-12);
        }
        assert_eq!(phi.eval(0.0).unwrap(), 1.0);
    }
}
