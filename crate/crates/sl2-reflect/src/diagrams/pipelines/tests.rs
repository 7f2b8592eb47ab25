use super::*;
use crate::diagrams::rewrite::{apply_chain_rule, apply_euler_transform, replay, RewriteRule};
use crate::halfplane::Layout;
use crate::reflection::{reflect_v3, v3_grid, ReflectParams};
use crate::specfun::hyp::hyp2f1;
use crate::specfun::gamma::gamma;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hp(re: f64, im: f64) -> HPoint {
    HPoint::new(C64::new(re, im)).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn w_of(p: &SpinParams, z: C64) -> C64 {
    0.5 + C64::new(0.0, 1.0) * z / (2.0 * p.beta)
}

/// `K(s, x) 1 = Gamma(g + x)/Gamma(g + s) 2F1(s + x, s - x, s + g; w)`.
fn k_on_one(p: &SpinParams, x: C64, z: C64) -> C64 {
    let (s, g) = (C64::new(p.s, 0.0), C64::new(p.g, 0.0));
    gamma(g + x) / gamma(g + s) * hyp2f1(s + x, s - x, s + g, w_of(p, z)).unwrap()
}

#[test]
fn reflection_replay_exponents_and_coefficient() {
    let r = replay_fig3().unwrap();
    assert_eq!(r.trace.len(), 2);
    assert_eq!(r.trace[0].rule, RewriteRule::Chain);
    assert_eq!(r.trace[1].rule, RewriteRule::Euler);
    let fin = r.result();
    assert_eq!(fin.internal_vertices(), vec!["v"]);
    let [zv, vm, pv] = star_exponents(fin, "v").unwrap();
    assert_eq!((zv, pv, vm), (ex("s - x"), ex("g + x"), ex("2s + x - g")));
    assert_eq!(fin.edges.len(), 3, "the (z + i beta) factors cancel");
    assert_eq!(fin.prefactor, fig3_expected_prefactor());
    for (k, step) in r.trace.iter().enumerate() {
        assert!(replay(step, &r.diagrams[k]).unwrap().same_as(&r.diagrams[k + 1]));
    }
}

#[test]
fn reflection_replay_value_matches_hypergeometric() {
    let grid = HQuadGrid::polar(1.0).unwrap();
    let p = SpinParams::standard();
    let z = hp(0.0, 2.0);
    let fin = replay_fig3().unwrap().result().clone();
    for x in [c(0.3, 0.0), c(0.0, 0.0), c(0.0, 0.8)] {
        let ctx = context(&p).assign(Symbol::X, x).point("z", z);
        let v = evaluate_diagram(&fin, &ctx, &grid).unwrap();
        let want = k_on_one(&p, x, z.z());
        assert!((v - want).norm() < 1e-6, "x = {x}: {v} vs {want}");
    }
}

#[test]
fn hypergeometric_star() {
    let grid = HQuadGrid::polar(1.0).unwrap();
    let p = SpinParams::standard();
    let z = hp(0.0, 2.0);
    let d = hyp2f1_diagram(&ex("s + x"), &ex("s - x"), &ex("s + g"));
    let x = c(0.3, 0.0);
    let ctx = context(&p).assign(Symbol::X, x).point("z", z);
    let v = evaluate_diagram(&d, &ctx, &grid).unwrap();
    let want = hyp2f1(c(1.3, 0.0), c(0.7, 0.0), c(2.0, 0.0), w_of(&p, z.z())).unwrap();
    assert!((v - want).norm() < 1e-6, "{v} vs {want}");
}

#[test]
fn chain_rule_preserves_value() {
    let grid = HQuadGrid::polar(1.0).unwrap();
    let p = SpinParams::standard();
    let d = Diagram::new()
        .with_vertex("z", VertexKind::External)
        .with_vertex("w", VertexKind::External)
        .with_vertex("v", VertexKind::Internal)
        .with_edge("z", "v", ex("lam"))
        .with_edge("v", "w", ex("rho"));
    let ctx = context(&p)
        .assign(Symbol::Lam, c(1.5, 0.0))
        .assign(Symbol::Rho, c(1.2, 0.0))
        .point("z", hp(0.0, 1.0))
        .point("w", hp(0.0, 1.0));
    let before = evaluate_diagram(&d, &ctx, &grid).unwrap();
    let after = evaluate_diagram(&apply_chain_rule(&d, "v").unwrap(), &ctx, &grid).unwrap();
    assert!((before - after).norm() < 1e-6, "{before} vs {after}");
}

#[test]
fn euler_preserves_value() {
    let grid = HQuadGrid::polar(1.3).unwrap();
    let p = SpinParams::new(1.3, 0.8, 0.7).unwrap();
    let mid = replay_fig3().unwrap().diagrams[1].clone();
    for (x, z) in [(c(0.3, 0.0), hp(0.4, 1.5)), (c(0.0, 0.9), hp(-1.0, 0.6))] {
        let ctx = context(&p).assign(Symbol::X, x).point("z", z);
        let before = evaluate_diagram(&mid, &ctx, &grid).unwrap();
        let after = evaluate_diagram(&apply_euler_transform(&mid, "v").unwrap(), &ctx, &grid).unwrap();
        assert!((before - after).norm() < 1e-6, "{before} vs {after}");
        assert!((after - k_on_one(&p, x, z.z())).norm() < 1e-6);
    }
}

fn nested_grid(s: f64) -> HQuadGrid {
    HQuadGrid::new(s, Layout::Polar { angular_nodes: 20, radial_panels: 3, radial_nodes: 10, octaves: 36, octave_split: 1 })
        .unwrap()
}

#[test]
fn two_vertex_chain_step() {
    let p = SpinParams::standard();
    let r = replay_fig3().unwrap();
    let x = c(0.3, 0.0);
    let z = hp(0.2, 1.0);
    let ctx = context(&p).assign(Symbol::X, x).point("z", z);
    let before = evaluate_diagram(r.initial(), &ctx, &nested_grid(1.0)).unwrap();
    let after = evaluate_diagram(&r.diagrams[1], &ctx, &HQuadGrid::polar(1.0).unwrap()).unwrap();
    let want = k_on_one(&p, x, z.z());
    assert!((after - want).norm() < 1e-6, "{after} vs {want}");
    assert!((before - after).norm() < 1e-6, "{before} vs {after}");
}

#[test]
fn kernel_diagram_matches_double_integral() {
    let p = SpinParams::standard();
    let x = c(0.0, 0.5);
    let z = hp(0.3, 1.5);
    let ctx = context(&p).assign(Symbol::X, x).point("z", z);
    let grid = v3_grid(1.0).unwrap();
    let diag = evaluate_diagram(&reflection_on_one_diagram(), &ctx, &grid).unwrap();
    let rp = ReflectParams::new(p, x).unwrap();
    let one = crate::halfplane::AnalyticFn::constant(c(1.0, 0.0));
    let v3 = reflect_v3(&rp, &one, z, &grid).unwrap().value;
    assert!((diag - v3).norm() < 1e-5, "{diag} vs {v3}");
}

#[test]
fn orthogonality_steps_match_displayed_factors() {
    let r = orthogonality_replay().unwrap();
    let [a12, a23, a3] = orthogonality_displayed_factors();
    assert_eq!(r.trace[0].coefficient_delta, a12);
    assert_eq!(r.trace[1].coefficient_delta, a23);
    let closing = r.diagrams[2].clone().with_prefactor(Prefactor::one());
    let closed = apply_chain_rule(&apply_chain_rule(&closing, "u").unwrap(), "w").unwrap();
    assert_eq!(closed.absorb_fixed_lines().unwrap().prefactor, a3);
    // intermediate pictures
    let line = |a: &str, b: &str| r.diagrams[2].edges.iter().find(|e| e.from == a && e.to == b).map(|e| e.exp.clone());
    assert_eq!(line("u", "w"), Some(ex("i*lam + g")));
    assert_eq!(line("p", "w"), Some(ex("i*rho - i*lam + eps")));
    assert_eq!(line("w", "m"), Some(ex("2s - i*lam - i*rho - eps")));
    assert_eq!(line("p", "u"), Some(ex("2s - i*rho - g + eps")));
    assert_eq!(line("u", "m"), None);
    assert!(r.diagrams[2].vertex("z").is_none());
}

#[test]
fn orthogonality_collects_to_displayed_product() {
    let pipe = OrthogonalityPipeline::new().unwrap();
    let lim = pipe.limit_prefactor();
    let want = orthogonality_collected_prefactor().map_exprs(|e| e.substitute(Symbol::Eps, &ExponentExpr::zero()));
    assert_eq!(lim, want);
}

#[test]
fn orthogonality_off_diagonal_decay() {
    let p = SpinParams::standard();
    let big = orthogonality_pipeline(&p, 0.8, 1.5, 0.05).unwrap().norm();
    let small = orthogonality_pipeline(&p, 0.8, 1.5, 1e-3).unwrap().norm();
    assert!(small <= 0.025 * big, "{small} vs {big}");
    assert_eq!(orthogonality_pipeline(&p, 0.8, 1.5, 0.0).unwrap(), c(0.0, 0.0));
    assert!(matches!(orthogonality_pipeline(&p, 0.8, 0.8, 0.0), Err(Error::Pole(_))));
    assert!(matches!(orthogonality_pipeline(&p, 0.8, -0.8, 0.0), Err(Error::Pole(_))));
    assert!(orthogonality_pipeline(&p, 0.8, 1.5, 0.2).is_err());
}

#[test]
fn orthogonality_delta_sequence() {
    let p = SpinParams::standard();
    let chk = orthogonality_delta_check(&p, 0.8, (0.5, 1.1), &[0.02, 0.01, 0.005]).unwrap();
    assert!(chk.relative_error() < 0.01, "{chk:?}");
}

#[test]
fn w_abc_reduces_to_hypergeometric_at_i_beta() {
    let p = SpinParams::standard();
    let grid = HQuadGrid::polar(1.0).unwrap();
    let (a, b, cc) = (c(1.3, 0.0), c(0.7, 0.0), c(2.0, 0.0));
    let z = hp(0.0, 2.0);
    let chk = w_abc_sides(&p, a, b, cc, z, hp(0.0, 1.0), &grid).unwrap();
    assert!(chk.residual() < 1e-6, "{chk:?}");
    // A(a, b, c) times the half-plane side is the hypergeometric function
    let pref = evaluate_prefactor(&hyp2f1_prefactor(&ex("s + x"), &ex("s + g")), &context(&p).assign(Symbol::X, c(0.3, 0.0)))
        .unwrap();
    let f = hyp2f1(a, b, cc, w_of(&p, z.z())).unwrap();
    assert!((pref * chk.half_plane - f).norm() < 1e-6);
}

#[test]
fn w_abc_endpoint_collapse() {
    // a = c: the parametric side is e^{-i pi s} (i beta - conj v)^{b-c} (z - conj v)^{-b}
    let p = SpinParams::standard();
    let grid = HQuadGrid::polar(1.0).unwrap();
    let (b, cc) = (c(0.6, 0.2), c(1.5, 0.0));
    let (z, v) = (hp(0.0, 2.0), hp(1.0, 1.0));
    let chk = w_abc_sides(&p, cc, b, cc, z, v, &grid).unwrap();
    let (ib, vb) = (c(0.0, 1.0), v.z().conj());
    let closed = C64::new(0.0, -PI).exp() * ((b - cc) * (ib - vb).ln()).exp() * (-b * (z.z() - vb).ln()).exp();
    assert!((chk.parametric - closed).norm() < 1e-10, "{chk:?} {closed}");
    assert!(chk.residual() < 1e-6);
}

#[test]
fn w_abc_random_admissible() {
    let p = SpinParams::standard();
    let grid = HQuadGrid::polar(1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..4 {
        let b = c(rng.random_range(0.4..1.2), rng.random_range(-0.3..0.3));
        let cc = b + c(rng.random_range(0.4..1.2), rng.random_range(-0.3..0.3));
        let a = c(rng.random_range(0.4..1.5), rng.random_range(-0.3..0.3));
        let r = w_abc_identity(&p, a, b, cc, hp(0.0, 2.0), hp(1.0, 1.0), &grid).unwrap();
        assert!(r < 1e-6, "(a, b, c) = ({a}, {b}, {cc}): {r}");
    }
    assert!(matches!(
        w_abc_identity(&p, c(-0.2, 0.0), c(0.5, 0.0), c(1.0, 0.0), hp(0.0, 2.0), hp(1.0, 1.0), &grid),
        Err(Error::Divergence(_))
    ));
}

#[test]
fn evaluator_guards() {
    let p = SpinParams::standard();
    let grid = HQuadGrid::polar(1.0).unwrap();
    let slow = Diagram::new()
        .with_vertex("z", VertexKind::External)
        .with_vertex("w", VertexKind::External)
        .with_vertex("v", VertexKind::Internal)
        .with_edge("z", "v", ex("s"))
        .with_edge("v", "w", ex("1/2"));
    let ctx = context(&p).point("z", hp(0.0, 1.0)).point("w", hp(0.0, 1.0));
    assert!(matches!(evaluate_diagram(&slow, &ctx, &grid), Err(Error::Divergence(_))));
    // the chain rule at s + x + s - x = 2s leaves Gamma(0) upstairs
    let pole = apply_chain_rule(&slow.map_exprs(|_| ex("s")), "v").unwrap();
    assert!(matches!(evaluate_diagram(&pole, &ctx, &grid), Err(Error::Pole(_))));
    assert!(evaluate_diagram(&orthogonality_start_diagram(), &ctx, &grid).is_err());
    let closed = Diagram::new()
        .with_vertex("z", VertexKind::External)
        .with_vertex("w", VertexKind::External)
        .with_edge("z", "w", ex("3/2"));
    let v = evaluate_diagram(&closed, &ctx, &grid).unwrap();
    assert_eq!(v, (-1.5 * c(0.0, 2.0).ln()).exp());
}

#[test]
fn extrapolation_is_exact_on_quadratics() {
    let f = |h: f64| c(2.0 + 3.0 * h - h * h, h);
    let v = extrapolate_to_zero(&[(0.02, f(0.02)), (0.01, f(0.01)), (0.005, f(0.005))]);
    assert!((v - c(2.0, 0.0)).norm() < 1e-13);
}

#[test]
fn random_gammas_are_not_simplified() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k: i64 = rng.random_range(1..5);
    let p = Prefactor::gammas(vec![ex(&format!("s + {k}"))], vec![ex(&format!("s + {}", k - 1))]);
    assert_eq!(p.gamma_num.len(), 1);
    assert_eq!(p.gamma_den.len(), 1);
}
