//! Gauss rules and the one-dimensional integrals built from them.
//!
//! Node/weight tables come from `gauss-quad` and are cached per
//! `(n, alpha, beta)`. Jacobi rules are always requested with an even
//! number of nodes (see [`gauss_jacobi`]).

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::{GaussJacobi, GaussLegendre};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights affinely mapped onto `[a, b]` (plain Legendre scaling).
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

type Key = (usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Rule>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Rule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Legendre rule with `n` nodes.
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    let key = (n, f64::NAN.to_bits(), 0);
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let gl = GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap());
    let (nodes, weights) = gl.iter().map(|(x, w)| (*x, *w)).unzip();
    let rule = Arc::new(Rule { nodes, weights });
    cache().lock().unwrap().insert(key, rule.clone());
    rule
}

/// Gauss–Jacobi rule for the weight `(1 - x)^alpha (1 + x)^beta`.
///
/// Odd node counts are rounded up: the upstream generator pins the middle
/// node of odd rules to zero, which is only right for `alpha == beta`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Arc<Rule>> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::EndpointSingularity(format!(
            "Jacobi exponents ({alpha}, {beta}) must exceed -1"
        )));
    }
    let n = (n.max(2) + 1) & !1;
    let key = (n, alpha.to_bits(), beta.to_bits());
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let gj = GaussJacobi::new(
        NonZeroUsize::new(n).unwrap(),
        alpha.try_into().map_err(|_| Error::EndpointSingularity(format!("alpha = {alpha}")))?,
        beta.try_into().map_err(|_| Error::EndpointSingularity(format!("beta = {beta}")))?,
    );
    let (nodes, weights) = gj.iter().map(|(x, w)| (*x, *w)).unzip();
    let rule = Arc::new(Rule { nodes, weights });
    cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// Composite Gauss–Legendre over `[a, b]` split into `panels` equal pieces.
pub fn gl_composite<F: FnMut(f64) -> C64>(a: f64, b: f64, panels: usize, n: usize, mut f: F) -> C64 {
    let rule = gauss_legendre(n);
    let h = (b - a) / panels as f64;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..panels {
        let lo = a + h * k as f64;
        for (x, w) in rule.mapped(lo, lo + h) {
            acc += f(x) * w;
        }
    }
    acc
}

const TINY_IM: f64 = 1e-15;

/// `int_0^{1/2} t^{p-1} g(t) dt` with `g` smooth on the closed interval.
fn left_half<F: Fn(f64) -> C64>(p: C64, g: &F, n: usize) -> Result<C64> {
    if p.im.abs() < TINY_IM {
        // t = (1 + x)/4
        let rule = gauss_jacobi(n, 0.0, p.re - 1.0)?;
        let scale = 0.25f64.powf(p.re);
        let mut acc = C64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            acc += g(0.25 * (1.0 + x)) * w;
        }
        return Ok(acc * scale);
    }
    // Endpoint panel [0, delta] carries the integrable singularity with the
    // real-part weight; beyond it the oscillation in ln t is resolved on
    // uniform panels in u = ln t.
    let log_delta = -(36.0 / p.re).min(700.0);
    let delta = log_delta.exp();
    let rule = gauss_jacobi(n.min(24), 0.0, p.re - 1.0)?;
    let half_delta = 0.5 * delta;
    let mut acc = C64::new(0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let t = half_delta * (1.0 + x);
        let osc = C64::new(0.0, p.im * t.ln()).exp();
        acc += g(t) * osc * w;
    }
    acc *= half_delta.powf(p.re);
    let u_lo = log_delta;
    let u_hi = 0.5f64.ln();
    let width = (3.0 / p.norm()).min(1.0);
    let panels = ((u_hi - u_lo) / width).ceil().max(1.0) as usize;
    acc += gl_composite(u_lo, u_hi, panels, 16, |u| (p * u).exp() * g(u.exp()));
    Ok(acc)
}

/// Beta-type integral `int_0^1 t^{p-1} (1-t)^{q-1} f(t) dt` for complex
/// exponents with positive real parts and `f` smooth on `[0, 1]`.
pub fn beta_integral<F: Fn(f64) -> C64>(p: C64, q: C64, f: F) -> Result<C64> {
    beta_integral_n(p, q, f, 40)
}

/// [`beta_integral`] with an explicit endpoint-rule size.
pub fn beta_integral_n<F: Fn(f64) -> C64>(p: C64, q: C64, f: F, n: usize) -> Result<C64> {
    if !(p.re > 0.0 && q.re > 0.0) {
        return Err(Error::EndpointSingularity(format!(
            "beta integral exponents p = {p}, q = {q} need positive real parts"
        )));
    }
    let one = C64::new(1.0, 0.0);
    let g_left = |t: f64| {
        let om = 1.0 - t;
        cpow_real(om, q - one) * f(t)
    };
    let g_right = |tau: f64| {
        let om = 1.0 - tau;
        cpow_real(om, p - one) * f(om)
    };
    Ok(left_half(p, &g_left, n)? + left_half(q, &g_right, n)?)
}

/// `x^e` for a positive real base and complex exponent.
#[inline]
pub fn cpow_real(x: f64, e: C64) -> C64 {
    if e.im == 0.0 {
        C64::new(x.powf(e.re), 0.0)
    } else {
        (e * x.ln()).exp()
    }
}

/// `int_0^inf y^{a-1} h(y) dy` for real `a > 0` and `h` smooth with
/// algebraic decay. Gauss–Jacobi on `[0, 1]`, then `y = t/(1-t)` with panels
/// graded geometrically toward `t = 1`.
pub fn half_line_integral<F: Fn(f64) -> C64>(a: f64, h: F) -> Result<C64> {
    half_line_integral_n(a, h, 40, 16)
}

pub fn half_line_integral_n<F: Fn(f64) -> C64>(a: f64, h: F, n0: usize, n: usize) -> Result<C64> {
    if !(a > 0.0) {
        return Err(Error::EndpointSingularity(format!("half-line exponent a = {a}")));
    }
    let rule = gauss_jacobi(n0, 0.0, a - 1.0)?;
    let scale = 0.5f64.powf(a);
    let mut acc = C64::new(0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += h(0.5 * (1.0 + x)) * w;
    }
    acc *= scale;
    // t in [1/2, 1): split (1 - t) geometrically, two panels per halving
    let gl = gauss_legendre(n);
    let mut lo = 0.5;
    let mut gap = 0.5;
    while gap > 1e-15 {
        let mid_gap = gap * 0.5f64.sqrt();
        for (a_t, b_t) in [(1.0 - gap, 1.0 - mid_gap), (1.0 - mid_gap, 1.0 - 0.5 * gap)] {
            for (t, w) in gl.mapped(a_t, b_t) {
                let om = 1.0 - t;
                let y = t / om;
                acc += h(y) * (y.powf(a - 1.0) * w / (om * om));
            }
        }
        let _ = lo;
        lo = 1.0 - 0.5 * gap;
        gap *= 0.5;
    }
    Ok(acc)
}

/// Uniform-sample trapezoid mean of `f` over a full period, used by the
/// Cauchy-circle derivative.
pub fn periodic_mean<F: FnMut(usize, f64) -> C64>(m: usize, mut f: F) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..m {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        acc += f(j, theta);
    }
    acc / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma;

    #[test]
    fn legendre_integrates_polynomials() {
        let v = gl_composite(0.0, 2.0, 3, 8, |x| C64::new(x.powi(5), 0.0));
        assert!((v.re - 64.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_odd_request_is_rounded_up() {
        let r = gauss_jacobi(7, 0.3, -0.4).unwrap();
        assert_eq!(r.len(), 8);
        // total weight = 2^{a+b+1} B(a+1, b+1)
        let total: f64 = r.weights.iter().sum();
        let exact = 2f64.powf(0.9) * (gamma(C64::new(1.3, 0.0)) * gamma(C64::new(0.6, 0.0))
            / gamma(C64::new(1.9, 0.0)))
        .re;
        assert!((total - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn beta_integral_real_matches_beta_function() {
        let p = C64::new(0.35, 0.0);
        let q = C64::new(1.7, 0.0);
        let v = beta_integral(p, q, |_| C64::new(1.0, 0.0)).unwrap();
        let exact = gamma(p) * gamma(q) / gamma(p + q);
        assert!((v - exact).norm() < 1e-13 * exact.norm());
        // t B(p, q) weight: B(p + 1, q)
        let v = beta_integral(p, q, |t| C64::new(t, 0.0)).unwrap();
        let exact = gamma(p + 1.0) * gamma(q) / gamma(p + q + 1.0);
        assert!((v - exact).norm() < 1e-13 * exact.norm());
    }

    #[test]
    fn beta_integral_complex_matches_beta_function() {
        let p = C64::new(0.8, 1.2);
        let q = C64::new(1.0, -0.7);
        let v = beta_integral(p, q, |_| C64::new(1.0, 0.0)).unwrap();
        let exact = gamma(p) * gamma(q) / gamma(p + q);
        assert!((v - exact).norm() < 1e-12 * exact.norm(), "{v} vs {exact}");
    }

    #[test]
    fn half_line_beta_prime() {
        // int y^{a-1} (1+y)^{-a-b} = B(a, b)
        let (a, b) = (1.6, 1.3);
        let v = half_line_integral(a, |y| C64::new((1.0 + y).powf(-a - b), 0.0)).unwrap();
        let exact = (gamma(C64::new(a, 0.0)) * gamma(C64::new(b, 0.0)) / gamma(C64::new(a + b, 0.0))).re;
        assert!((v.re - exact).abs() < 1e-12, "{} vs {exact}", v.re);
    }
}
