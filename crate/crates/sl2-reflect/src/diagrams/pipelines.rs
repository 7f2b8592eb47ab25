//! Scripted derivations: the reflection operator applied to 1, the
//! regularised orthogonality calculation, and the parametric identity
//! behind the hypergeometric diagram.

use std::f64::consts::PI;

use super::diagram::{Diagram, Prefactor, VertexKind};
use super::eval::{evaluate_diagram, evaluate_prefactor, EvalContext};
use super::expr::{ex, ExponentExpr, Symbol};
use super::rewrite::{chain_step, euler_step, RewriteStep};
use crate::error::{Error, Result};
use crate::halfplane::{HPoint, HQuadGrid};
use crate::specfun::gamma::gamma_ratio;
use crate::specfun::quad::{beta_integral, gauss_legendre};
use crate::spectral::SpectralMeasure;
use crate::{SpinParams, C64};

/// Context with `s`, `g` and `beta` taken from `params`.
pub fn context(params: &SpinParams) -> EvalContext {
    EvalContext::new(params.beta)
        .assign(Symbol::S, C64::new(params.s, 0.0))
        .assign(Symbol::G, C64::new(params.g, 0.0))
}

/// `A(a, b, c) = (2 i beta)^a e^{i pi s} Gamma(c) Gamma(2s + a - c) / (Gamma(a) Gamma(2s))`.
pub fn hyp2f1_prefactor(a: &ExponentExpr, c: &ExponentExpr) -> Prefactor {
    let two_s = ex("2s");
    let mut p = Prefactor::gammas(vec![c.clone(), &(&two_s + a) - c], vec![a.clone(), two_s]);
    p.pow_2ibeta = a.clone();
    p.phase_pi_s = 1;
    p
}

/// The star with lines `z -> w` (`b`), `i beta -> w` (`c - b`),
/// `w -> -i beta` (`2s + a - c`) and prefactor `A(a, b, c)`; its value is
/// `2F1(a, b, c; 1/2 + i z/(2 beta))`.
pub fn hyp2f1_diagram(a: &ExponentExpr, b: &ExponentExpr, c: &ExponentExpr) -> Diagram {
    Diagram::new()
        .with_vertex("z", VertexKind::External)
        .with_vertex("p", VertexKind::FixedPlus)
        .with_vertex("m", VertexKind::FixedMinus)
        .with_vertex("w", VertexKind::Internal)
        .with_edge("z", "w", b.clone())
        .with_edge("p", "w", c - b)
        .with_edge("w", "m", &(&ex("2s") + a) - c)
        .with_prefactor(hyp2f1_prefactor(a, c))
}

/// Kernel of the reflection operator as a diagram in `z` and the external
/// point `w`, including the outside factor `(z + i beta)^{g-s}` as the line
/// `z -> -i beta`.
pub fn reflection_kernel_diagram() -> Diagram {
    let mut p = Prefactor::gammas(vec![ex("g + x"), ex("3s - g")], vec![ex("2s"), ex("2s")]);
    p.phase_pi_s = 2;
    p.pow_2ibeta = ex("s - x");
    Diagram::new()
        .with_vertex("z", VertexKind::External)
        .with_vertex("w", VertexKind::External)
        .with_vertex("p", VertexKind::FixedPlus)
        .with_vertex("m", VertexKind::FixedMinus)
        .with_vertex("v", VertexKind::Internal)
        .with_edge("z", "v", ex("g + x"))
        .with_edge("p", "v", ex("s - x"))
        .with_edge("v", "w", ex("3s - g"))
        .with_edge("z", "m", ex("s - g"))
        .with_prefactor(p)
}

/// The reflection operator applied to `psi = 1`: the kernel diagram with
/// `w` integrated and the factor `(w + i beta)^{x-g}` as the line
/// `w -> -i beta`.
pub fn reflection_on_one_diagram() -> Diagram {
    let mut d = reflection_kernel_diagram().with_edge("w", "m", ex("g - x"));
    d.vertices.iter_mut().find(|v| v.id == "w").expect("w present").kind = VertexKind::Internal;
    d.canonical()
}

/// Record of a scripted derivation.
#[derive(Debug, Clone)]
pub struct Replay {
    /// Diagram before each step, then the final diagram.
    pub diagrams: Vec<Diagram>,
    pub trace: Vec<RewriteStep>,
}

impl Replay {
    pub fn initial(&self) -> &Diagram {
        &self.diagrams[0]
    }

    pub fn result(&self) -> &Diagram {
        self.diagrams.last().expect("non-empty replay")
    }
}

fn script(start: Diagram, steps: &[(bool, &str)]) -> Result<Replay> {
    let mut diagrams = vec![start.canonical()];
    let mut trace = Vec::new();
    for &(chain, v) in steps {
        let cur = diagrams.last().expect("non-empty");
        let (next, step) = if chain { chain_step(cur, v)? } else { euler_step(cur, v)? };
        diagrams.push(next);
        trace.push(step);
    }
    Ok(Replay { diagrams, trace })
}

/// `K(s, x) 1` turned into the hypergeometric star: chain rule at the
/// integrated `w`, then the Euler transformation at `v`.
pub fn replay_fig3() -> Result<Replay> {
    script(reflection_on_one_diagram(), &[(true, "w"), (false, "v")])
}

/// The coefficient the replay must end with:
/// `Gamma(g + x)/Gamma(s + g) * A(s + x, s - x, s + g)`.
pub fn fig3_expected_prefactor() -> Prefactor {
    Prefactor::gammas(vec![ex("g + x")], vec![ex("s + g")]).times(&hyp2f1_prefactor(&ex("s + x"), &ex("s + g")))
}

/// Exponents of the final star in the order (`z -> v`, `v -> -i beta`,
/// `i beta -> v`).
pub fn star_exponents(d: &Diagram, v: &str) -> Result<[ExponentExpr; 3]> {
    let find = |f: &dyn Fn(&str, &str) -> bool| {
        d.edges
            .iter()
            .find(|e| f(&e.from, &e.to))
            .map(|e| e.exp.clone())
            .ok_or_else(|| Error::NotApplicable(format!("no matching line at '{v}'")))
    };
    let kind = |id: &str| d.kind(id).unwrap_or(VertexKind::Internal);
    Ok([
        find(&|a, b| b == v && kind(a) == VertexKind::External)?,
        find(&|a, b| a == v && kind(b) == VertexKind::FixedMinus)?,
        find(&|a, b| b == v && kind(a) == VertexKind::FixedPlus)?,
    ])
}

/// Outer coefficient of `<Psi_rho|Psi_l>` in terms of the regularised
/// three-vertex integral.
pub fn orthogonality_outer_prefactor() -> Prefactor {
    let mut p = Prefactor::gammas(
        vec![ex("s + g"), ex("s + g"), ex("2s + i*lam - g"), ex("2s - i*rho - g")],
        vec![ex("2s"), ex("2s"), ex("s + i*lam"), ex("s - i*rho")],
    );
    p.phase_pi_s = 2;
    p.pow_2ibeta = ex("2s + i*lam - i*rho");
    p
}

/// The regularised three-vertex integral: `u` carries the `rho` side with
/// its `eps` shifts, `w` the `lambda` side, `z` the integration point of
/// the scalar product.
pub fn orthogonality_start_diagram() -> Diagram {
    Diagram::new()
        .with_vertex("p", VertexKind::FixedPlus)
        .with_vertex("m", VertexKind::FixedMinus)
        .with_vertex("u", VertexKind::Internal)
        .with_vertex("z", VertexKind::Internal)
        .with_vertex("w", VertexKind::Internal)
        .with_edge("u", "z", ex("s + i*rho + eps"))
        .with_edge("z", "w", ex("s - i*lam"))
        .with_edge("p", "w", ex("i*lam + g"))
        .with_edge("w", "m", ex("2s + i*lam - g"))
        .with_edge("p", "u", ex("2s - i*rho - g + eps"))
        .with_edge("u", "m", ex("-i*rho + g - eps"))
        .with_prefactor(orthogonality_outer_prefactor())
}

/// Chain rule at `z`, Euler at `w`, chain rule at `u`, chain rule at `w`.
pub fn orthogonality_replay() -> Result<Replay> {
    script(orthogonality_start_diagram(), &[(true, "z"), (false, "w"), (true, "u"), (true, "w")])
}

/// The step factors as displayed for the three stages of the calculation:
/// first chain, Euler, and the two closing chains with the leftover line
/// `(2 i beta)^{i(rho + lam) - eps}`.
pub fn orthogonality_displayed_factors() -> [Prefactor; 3] {
    let mut a12 =
        Prefactor::gammas(vec![ex("i*rho - i*lam + eps"), ex("2s")], vec![ex("s + i*rho + eps"), ex("s - i*lam")]);
    a12.phase_pi_s = -1;
    let mut a23 = Prefactor::gammas(
        vec![ex("2s - i*rho - i*lam - eps"), ex("i*rho + i*lam + eps")],
        vec![ex("2s - g + i*lam"), ex("g - i*lam")],
    );
    a23.pow_2ibeta = ex("-2i*lam");
    let mut a3 = Prefactor::gammas(
        vec![ex("i*lam - i*rho + eps"), ex("2s"), ex("-i*lam - i*rho + eps"), ex("2s")],
        vec![ex("2s - g - i*rho + eps"), ex("g + i*lam"), ex("2s - i*rho - i*lam - eps"), ex("2eps")],
    );
    a3.phase_pi_s = -2;
    a3.pow_2ibeta = ex("i*rho + i*lam - eps");
    [a12, a23, a3]
}

/// The collected coefficient before the limit, with `eps` kept only where
/// it regularises:
/// `(2 beta)^{2s} Gamma^2(g+s) Gamma(2s) Gamma(±i(l+r)+eps) Gamma(±i(l-r)+eps)
///  / (Gamma(g±il) Gamma(s±il) Gamma(s±ir) Gamma(2 eps))`.
pub fn orthogonality_collected_prefactor() -> Prefactor {
    let mut p = Prefactor::gammas(
        vec![
            ex("g + s"),
            ex("g + s"),
            ex("2s"),
            ex("i*lam + i*rho + eps"),
            ex("-i*lam - i*rho + eps"),
            ex("i*lam - i*rho + eps"),
            ex("-i*lam + i*rho + eps"),
        ],
        vec![
            ex("g + i*lam"),
            ex("g - i*lam"),
            ex("s + i*lam"),
            ex("s - i*lam"),
            ex("s + i*rho"),
            ex("s - i*rho"),
            ex("2eps"),
        ],
    );
    // (2 beta)^{2s} = e^{-i pi s} (2 i beta)^{2s}
    p.pow_2ibeta = ex("2s");
    p.phase_pi_s = -1;
    p
}

/// Result of the scripted orthogonality calculation, reduced to a single
/// symbolic prefactor in `s, g, lam, rho, eps`.
#[derive(Debug, Clone)]
pub struct OrthogonalityPipeline {
    pub replay: Replay,
    pub total: Prefactor,
}

impl OrthogonalityPipeline {
    pub fn new() -> Result<Self> {
        let replay = orthogonality_replay()?;
        let fin = replay.result().absorb_fixed_lines()?;
        if !fin.edges.is_empty() || !fin.internal_vertices().is_empty() {
            return Err(Error::NotApplicable("orthogonality script did not close the diagram".into()));
        }
        Ok(OrthogonalityPipeline { total: fin.prefactor.clone(), replay })
    }

    /// `total` at `eps = 0`.
    pub fn limit_prefactor(&self) -> Prefactor {
        self.total.map_exprs(|e| e.substitute(Symbol::Eps, &ExponentExpr::zero()))
    }

    /// The regularised scalar product at `(lambda, rho, eps)`.
    pub fn evaluate(&self, params: &SpinParams, lambda: f64, rho: f64, eps: f64) -> Result<C64> {
        if !(0.0..=0.1).contains(&eps) {
            return Err(Error::InvalidParams(format!("eps = {eps} outside [0, 0.1]")));
        }
        let ctx = context(params)
            .assign(Symbol::Lam, C64::new(lambda, 0.0))
            .assign(Symbol::Rho, C64::new(rho, 0.0))
            .assign(Symbol::Eps, C64::new(eps, 0.0));
        evaluate_prefactor(&self.total, &ctx)
    }
}

/// One-shot [`OrthogonalityPipeline::evaluate`]. At `eps = 0` it is zero
/// off the diagonal and a [`Error::Pole`] at `lambda = ±rho`.
pub fn orthogonality_pipeline(params: &SpinParams, lambda: f64, rho: f64, eps: f64) -> Result<C64> {
    OrthogonalityPipeline::new()?.evaluate(params, lambda, rho, eps)
}

/// `exp(1 - 1/(1 - t^2))` on `(a, b)` mapped to `t in (-1, 1)`; peak 1.
pub fn smooth_bump(a: f64, b: f64) -> impl Fn(f64) -> f64 + Copy {
    move |x: f64| {
        let t = (2.0 * x - a - b) / (b - a);
        if t.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - t * t)).exp()
        }
    }
}

/// Panels on `[a, b]` graded geometrically toward the points in `peaks`
/// (smallest width `eps / 4`).
fn graded_breaks(a: f64, b: f64, peaks: &[f64], eps: f64) -> Vec<f64> {
    let mut pts = vec![a, b];
    for &p in peaks {
        if p <= a || p >= b {
            continue;
        }
        pts.push(p);
        let mut h = 0.25 * eps;
        while p - h > a || p + h < b {
            for q in [p - h, p + h] {
                if q > a && q < b {
                    pts.push(q);
                }
            }
            h *= 2.0;
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `int_a^b bump(rho) <Psi_rho|Psi_lambda>_eps d rho`.
pub fn delta_sequence_integral<F: Fn(f64) -> f64>(
    pipe: &OrthogonalityPipeline,
    params: &SpinParams,
    lambda: f64,
    bump: F,
    support: (f64, f64),
    eps: f64,
) -> Result<C64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParams("the delta sequence needs eps > 0".into()));
    }
    let breaks = graded_breaks(support.0, support.1, &[lambda, -lambda], eps);
    let gl = gauss_legendre(24);
    let mut acc = C64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        for (r, wt) in gl.mapped(w[0], w[1]) {
            let f = bump(r);
            if f != 0.0 {
                acc += pipe.evaluate(params, lambda, r, eps)? * (f * wt);
            }
        }
    }
    Ok(acc)
}

/// Neville extrapolation of `(h, value)` samples to `h = 0`.
pub fn extrapolate_to_zero(samples: &[(f64, C64)]) -> C64 {
    let mut p: Vec<C64> = samples.iter().map(|s| s.1).collect();
    let h: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let n = p.len();
    for k in 1..n {
        for j in 0..n - k {
            p[j] = (p[j + 1] * h[j] - p[j] * h[j + k]) / (h[j] - h[j + k]);
        }
    }
    p[0]
}

/// Delta-sequence check of the regularised orthogonality.
#[derive(Debug, Clone)]
pub struct DeltaCheck {
    pub samples: Vec<(f64, C64)>,
    pub limit: C64,
    /// `mu^{-1}(lambda) (bump(lambda) + bump(-lambda)) / 2`.
    pub target: f64,
}

impl DeltaCheck {
    pub fn relative_error(&self) -> f64 {
        (self.limit - self.target).norm() / self.target.abs()
    }
}

pub fn orthogonality_delta_check(
    params: &SpinParams,
    lambda: f64,
    support: (f64, f64),
    eps_values: &[f64],
) -> Result<DeltaCheck> {
    let pipe = OrthogonalityPipeline::new()?;
    let bump = smooth_bump(support.0, support.1);
    let samples = eps_values
        .iter()
        .map(|&e| Ok((e, delta_sequence_integral(&pipe, params, lambda, bump, support, e)?)))
        .collect::<Result<Vec<_>>>()?;
    let limit = extrapolate_to_zero(&samples);
    let mu = SpectralMeasure::new(*params).mu(lambda);
    let target = (bump(lambda) + bump(-lambda)) / (2.0 * mu);
    Ok(DeltaCheck { samples, limit, target })
}

/// Both sides of the parametric identity
/// `int Dw (z - conj w)^{-b} (i beta - conj w)^{b-c} (w - conj v)^{c-a-2s}
///  = e^{-i pi s} Gamma(a) Gamma(2s) / (Gamma(b) Gamma(c-b) Gamma(2s+a-c))
///    int_0^1 t^{b-1} (1-t)^{c-b-1} (t(z - i beta) + i beta - conj v)^{-a} dt`.
#[derive(Debug, Clone, Copy)]
pub struct WAbcCheck {
    pub half_plane: C64,
    pub parametric: C64,
}

impl WAbcCheck {
    pub fn residual(&self) -> f64 {
        (self.half_plane - self.parametric).norm()
    }
}

pub fn w_abc_sides(
    params: &SpinParams,
    a: C64,
    b: C64,
    c: C64,
    z: HPoint,
    v: HPoint,
    grid: &HQuadGrid,
) -> Result<WAbcCheck> {
    for (name, val) in [("a", a), ("b", b), ("c - b", c - b)] {
        if !(val.re > 0.0) {
            return Err(Error::Divergence(format!("Re {name} = {} must be positive", val.re)));
        }
    }
    let (s, ib) = (params.s, C64::new(0.0, params.beta));
    let d = Diagram::new()
        .with_vertex("z", VertexKind::External)
        .with_vertex("v", VertexKind::External)
        .with_vertex("p", VertexKind::FixedPlus)
        .with_vertex("w", VertexKind::Internal)
        .with_edge("z", "w", ex("x"))
        .with_edge("p", "w", ex("lam"))
        .with_edge("w", "v", ex("rho"));
    let ctx = context(params)
        .assign(Symbol::X, b)
        .assign(Symbol::Lam, c - b)
        .assign(Symbol::Rho, 2.0 * s + a - c)
        .point("z", z)
        .point("v", v);
    let half_plane = evaluate_diagram(&d, &ctx, grid)?;
    let two_s = C64::new(2.0 * s, 0.0);
    let coef = C64::new(0.0, -PI * s).exp() * gamma_ratio(&[a, two_s], &[b, c - b, two_s + a - c])?;
    let (zz, vb) = (z.z(), v.z().conj());
    let t_int = beta_integral(b, c - b, |t| (-a * (t * (zz - ib) + ib - vb).ln()).exp())?;
    Ok(WAbcCheck { half_plane, parametric: coef * t_int })
}

/// `|half-plane side - parametric side|`.
pub fn w_abc_identity(
    params: &SpinParams,
    a: C64,
    b: C64,
    c: C64,
    z: HPoint,
    v: HPoint,
    grid: &HQuadGrid,
) -> Result<f64> {
    Ok(w_abc_sides(params, a, b, c, z, v, grid)?.residual())
}

#[cfg(test)]
mod tests;
