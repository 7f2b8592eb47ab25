use super::*;
use crate::spectral::measure::SpectralMeasure;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn hp(re: f64, im: f64) -> HPoint {
    HPoint::new(c(re, im)).unwrap()
}

fn phi(p: &SpinParams, l: f64, y: f64) -> C64 {
    hyp2f1(c(p.s, l), c(p.s, -l), c(p.s + p.g, 0.0), c(-y, 0.0)).unwrap()
}

#[test]
fn u_maps_psi_to_phi() {
    let p = SpinParams::standard();
    let e = Eigenfunction::new(p, 0.8).unwrap();
    let g = HQuadGrid::polar(p.s).unwrap();
    for y in [0.0, 0.5] {
        let v = transform_u(e.as_fn(), &p, y, &g).unwrap();
        assert!((v - phi(&p, 0.8, y)).norm() < 1e-6, "y = {y}: {v}");
    }
}

#[test]
fn u_reproduces_constant() {
    let p = SpinParams::new(1.3, 0.8, 1.2).unwrap();
    let g = HQuadGrid::polar(p.s).unwrap();
    let v = transform_u(&AnalyticFn::constant(c(1.0, 0.0)), &p, 0.7, &g).unwrap();
    assert!((v - 1.0).norm() < 1e-6, "{v}");
}

#[test]
fn udag_inverts_up_to_bridge() {
    let p = SpinParams::standard();
    let l = 0.8;
    let chi = HalfLineFn::eigen(p, l);
    let bridge = SpectralMeasure::new(p).bridge(l);
    for z in [hp(0.0, 2.0), hp(-0.7, 0.4)] {
        let v = transform_udag(&chi, &p, z).unwrap() / bridge;
        let want = Eigenfunction::new(p, l).unwrap().eval(z.z());
        assert!((v - want).norm() < 1e-6, "{v} {want}");
    }
    assert_eq!(transform_udag(&HalfLineFn::zero(), &p, hp(0.0, 1.0)).unwrap(), c(0.0, 0.0));
}

#[test]
fn udag_rejects_growth() {
    let p = SpinParams::standard();
    let chi = HalfLineFn::new(|_| c(1.0, 0.0), 0.0);
    assert!(matches!(transform_udag(&chi, &p, hp(0.0, 1.0)), Err(Error::Divergence(_))));
}

#[test]
fn udag_u_eigenrelation() {
    let p = SpinParams::standard();
    let l = 0.8;
    let e = Eigenfunction::new(p, l).unwrap();
    let g = HQuadGrid::polar(p.s).unwrap();
    let rule = HalfLineRule::new(&p, 24, 10, 1e-10).unwrap();
    let z = hp(0.3, 1.5);
    let v = transform_udag_u(e.as_fn(), &p, z, &g, &rule).unwrap();
    let want = SpectralMeasure::new(p).bridge(l) * e.eval(z.z());
    assert!((v - want).norm() < 1e-5 * want.norm().max(1.0), "{v} {want}");
}

#[test]
fn j_factors_through_udag() {
    let p = SpinParams::standard();
    let chi = HalfLineFn::new(|y| c((-y).exp(), 0.0), f64::NEG_INFINITY);
    let rule = HalfLineRule::standard(&p).unwrap();
    let f = udag_function(&chi, &p, &rule).unwrap();
    let g = HQuadGrid::new(
        p.s,
        crate::halfplane::Layout::Polar { angular_nodes: 24, radial_panels: 4, radial_nodes: 12, octaves: 30, octave_split: 1 },
    )
    .unwrap();
    for l in [0.5, 1.7] {
        let j = index_transform_j(&chi, &p, l).unwrap();
        let t = transform_t(&f, &p, l, &g).unwrap();
        assert!((j - t).norm() < 1e-5, "{j} {t}");
        assert!((j - index_transform_j(&chi, &p, -l).unwrap()).norm() < 1e-10);
    }
}

#[test]
fn j_parseval() {
    let p = SpinParams::standard();
    let chi = HalfLineFn::new(|y| c((-y).exp(), 0.0), f64::NEG_INFINITY);
    let lhs = half_line_norm_sq(&chi, &p).unwrap();
    let m = SpectralMeasure::new(p);
    let gl = gauss_legendre(16);
    let mut rhs = 0.0;
    for k in 0..40 {
        for (l, w) in gl.mapped(k as f64, k as f64 + 1.0) {
            rhs += 2.0 * w * m.mu_hat(l) * index_transform_j(&chi, &p, l).unwrap().norm_sqr();
        }
    }
    assert!((lhs - rhs).abs() < 1e-3 * lhs, "{lhs} {rhs}");
}

#[test]
fn half_line_identity() {
    let p = SpinParams::standard();
    let z = hp(0.0, 2.0);
    for l in [0.8, -0.8] {
        let mb = MbParams::from_spin(&p, l);
        let zarg = mb_argument(&p, z.z());
        let r = mellin_barnes_identity_check(&mb, zarg).unwrap();
        assert!(r < 1e-6, "{r}");
        assert!(psi_phi_residual(&p, l, z).unwrap() < 1e-6);
    }
    let a = mb_integral_side(&MbParams::from_spin(&p, 0.8), c(1.5, -0.5)).unwrap();
    let b = mb_integral_side(&MbParams::from_spin(&p, -0.8), c(1.5, -0.5)).unwrap();
    assert!((a - b).norm() < 1e-10);
}

#[test]
fn half_line_identity_generic_parameters() {
    let mb = MbParams { rho: c(1.7, 0.0), p: c(0.9, 0.3), q: c(1.2, -0.4), r: c(1.6, 0.0) };
    for zarg in [c(0.8, 0.3), c(2.5, -1.0)] {
        let r = mellin_barnes_identity_check(&mb, zarg).unwrap();
        assert!(r < 1e-7, "{zarg}: {r}");
    }
}
