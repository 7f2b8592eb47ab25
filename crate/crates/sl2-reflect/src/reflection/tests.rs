use super::*;
use crate::specfun::hyp::{hyp2f1, hyp2f1_euler};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn hp(re: f64, im: f64) -> HPoint {
    HPoint::new(c(re, im)).unwrap()
}

fn psi_exact(p: &SpinParams, lambda: f64, z: C64) -> C64 {
    let w = 0.5 + I * z / (2.0 * p.beta);
    hyp2f1(c(p.s, lambda), c(p.s, -lambda), c(p.s + p.g, 0.0), w).unwrap()
}

#[test]
fn v1_on_one_is_normalised_hypergeometric() {
    let p = SpinParams::new(1.2, 0.8, 1.3).unwrap();
    for (lambda, z) in [(0.7, c(0.4, 1.1)), (2.5, c(-1.0, 0.3))] {
        let rp = ReflectParams::spectral(p, lambda).unwrap();
        let v = reflect_v1(&rp, &AnalyticFn::constant(c(1.0, 0.0)), HPoint::new(z).unwrap()).unwrap();
        let expect = normalization(&p, c(0.0, lambda)).unwrap() * psi_exact(&p, lambda, z);
        assert!((v - expect).norm() < 1e-9 * (1.0 + expect.norm()), "{v} vs {expect}");
    }
}

#[test]
fn v1_near_identity_limit() {
    let p = SpinParams::standard();
    let rp = ReflectParams::new(p, c(1.0 - 1e-4, 0.0)).unwrap();
    let psi = AnalyticFn::power(c(0.0, 1.0), c(2.0, 0.0));
    let z = hp(0.3, 0.8);
    let v = reflect_v1(&rp, &psi, z).unwrap();
    assert!((v - psi.eval(z.z())).norm() < 1e-3);
    let exact = ReflectParams::new(p, c(1.0, 0.0)).unwrap();
    assert!(exact.limit_warning().is_some());
    assert_eq!(reflect_v1(&exact, &psi, z).unwrap(), psi.eval(z.z()));
}

#[test]
fn v1_matches_v2_on_power() {
    let p = SpinParams::standard();
    let rp = ReflectParams::new(p, c(0.3, 0.0)).unwrap();
    let psi = AnalyticFn::power(c(0.0, 1.0), c(2.0, 0.0));
    let z = hp(0.0, 2.0);
    let a = reflect_v1(&rp, &psi, z).unwrap();
    let b = reflect_v2(&rp, &psi, z, 0).unwrap();
    assert!((a - b).norm() < 1e-8, "{a} {b}");
}

#[test]
fn v1_matches_v2_on_exponential() {
    let p = SpinParams::standard();
    let rp = ReflectParams::new(p, c(0.3, 0.0)).unwrap();
    let psi = AnalyticFn::exp_i(1.0);
    let z = hp(1.0, 2.0);
    let a = reflect_v1(&rp, &psi, z).unwrap();
    let b = reflect_v2(&rp, &psi, z, 0).unwrap();
    assert!((a - b).norm() < 1e-8, "{a} {b}");
}

#[test]
fn v2_on_one_is_euler_integral() {
    let p = SpinParams::new(1.0, 1.3, 0.9).unwrap();
    let x = c(0.0, 1.4);
    let rp = ReflectParams::new(p, x).unwrap();
    let z = c(0.5, 0.7);
    let v = reflect_v2(&rp, &AnalyticFn::constant(c(1.0, 0.0)), HPoint::new(z).unwrap(), 0).unwrap();
    let w = 0.5 + I * z / (2.0 * p.beta);
    let g = c(p.g, 0.0);
    let s = c(p.s, 0.0);
    let euler = normalization(&p, x).unwrap() * (1.0 - w).powc(g - s) * hyp2f1_euler(g - x, g + x, g + s, w).unwrap();
    assert!((v - euler).norm() < 1e-11 * euler.norm(), "{v} {euler}");
}

#[test]
fn v2_derivatives_match_finite_differences() {
    let p = SpinParams::new(1.1, 0.9, 1.0).unwrap();
    let rp = ReflectParams::new(p, c(0.2, 0.5)).unwrap();
    let psi = AnalyticFn::power(c(0.5, 1.5), c(1.5, 0.3));
    let z = c(0.3, 0.9);
    let h = 1e-5;
    let f = |u: C64| reflect_v2(&rp, &psi, HPoint::new(u).unwrap(), 0).unwrap();
    let d1 = reflect_v2(&rp, &psi, HPoint::new(z).unwrap(), 1).unwrap();
    let fd1 = (f(z + h) - f(z - h)) / (2.0 * h);
    assert!((d1 - fd1).norm() < 1e-6, "{d1} {fd1}");
    let d2 = reflect_v2(&rp, &psi, HPoint::new(z).unwrap(), 2).unwrap();
    let h2 = 1e-4;
    let fd2 = (f(z + h2) - 2.0 * f(z) + f(z - h2)) / (h2 * h2);
    assert!((d2 - fd2).norm() < 1e-4, "{d2} {fd2}");
}

#[test]
fn v2_derivative_needs_handle() {
    let p = SpinParams::standard();
    let rp = ReflectParams::new(p, c(0.3, 0.0)).unwrap();
    let bare = AnalyticFn::new(|z| z * z, -2.0);
    assert!(matches!(reflect_v2(&rp, &bare, hp(0.0, 1.0), 1), Err(Error::MissingDerivative(1))));
}

#[test]
fn eigenfunction_matches_direct_hypergeometric() {
    let p = SpinParams::standard();
    // z = i beta is the origin w = 0 of the hypergeometric variable
    let v = eigenfunction_via_reflection(&p, 0.8, hp(0.0, 1.0)).unwrap();
    assert!((v - 1.0).norm() < 1e-9, "{v}");
    let z = c(-0.4, 0.25);
    let v = eigenfunction_via_reflection(&p, 0.8, HPoint::new(z).unwrap()).unwrap();
    let direct = psi_exact(&p, 0.8, z);
    assert!((v - direct).norm() < 1e-9, "{v} {direct}");
    let z = hp(0.7, 0.4);
    let a = eigenfunction_via_reflection(&p, 1.7, z).unwrap();
    let b = eigenfunction_via_reflection(&p, -1.7, z).unwrap();
    assert!((a - b).norm() < 1e-10);
    assert!(eigenfunction_via_reflection(&p, f64::NAN, z).is_err());
}

#[test]
fn beta_homogeneity() {
    let p = SpinParams::new(1.3, 1.1, 1.0).unwrap();
    let x = c(0.4, -0.6);
    let psi = AnalyticFn::power(c(0.0, 2.0), c(2.2, 0.0));
    let cc = 2.0;
    let psi_c = AnalyticFn::new(move |w: C64| (-2.2 * (w / cc + c(0.0, 2.0)).ln()).exp(), 2.2);
    let z = c(0.2, 0.6);
    let a = reflect_v1(&ReflectParams::new(p, x).unwrap(), &psi, HPoint::new(z).unwrap()).unwrap();
    let b = reflect_v1(&ReflectParams::new(p.scaled(cc), x).unwrap(), &psi_c, HPoint::new(z * cc).unwrap()).unwrap();
    assert!((a - b).norm() < 1e-8, "{a} {b}");
}

#[test]
fn v3_rejects_bad_exponents() {
    let p = SpinParams::new(1.0, 3.5, 1.0).unwrap();
    let rp = ReflectParams::new(p, c(0.2, 0.0)).unwrap();
    let psi = AnalyticFn::power(c(0.0, 2.0), c(3.0, 0.0));
    let g = v3_grid(1.0).unwrap();
    assert!(matches!(reflect_v3(&rp, &psi, hp(0.0, 2.0), &g), Err(Error::Divergence(_))));
}

#[test]
fn v3_matches_v2() {
    let p = SpinParams::new(1.0, 0.8, 1.0).unwrap();
    let rp = ReflectParams::new(p, c(0.2, 0.0)).unwrap();
    let psi = AnalyticFn::power(c(0.0, 2.0), c(3.0, 0.0));
    let z = hp(0.0, 2.0);
    let g = v3_grid(1.0).unwrap();
    let v3 = reflect_v3(&rp, &psi, z, &g).unwrap();
    let v2 = reflect_v2(&rp, &psi, z, 0).unwrap();
    assert!((v3.value - v2).norm() < 1e-5, "{} vs {v2} (est {})", v3.value, v3.est_error);
}
