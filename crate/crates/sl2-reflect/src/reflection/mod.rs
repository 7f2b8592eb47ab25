//! The reflection operator `K(s, x)` in three integral representations:
//! the Möbius-path beta integral (V1), the affine-path beta integral (V2)
//! and the double half-plane integral (V3).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfplane::{AnalyticFn, HPoint, HQuadGrid, Layout};
use crate::specfun::gamma::{gamma_ratio, log_gamma};
use crate::specfun::quad::beta_integral_n;
use crate::{SpinParams, C64, I};

/// Below this `|s - x|` the operator is treated as its identity limit.
pub const IDENTITY_LIMIT: f64 = 1e-6;

/// Model parameters plus the second spin `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectParams {
    pub params: SpinParams,
    pub x: C64,
}

/// Raised when `x` is so close to `s` that only the identity limit is
/// returned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitWarning {
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    V1,
    V2,
    V3,
}

/// A kernel value with its refinement-based error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub value: C64,
    pub est_error: f64,
    pub representation: Representation,
}

impl ReflectParams {
    /// Validates `Re(s - x) > 0` and `Re(g + x) > 0`, or the identity limit.
    pub fn new(params: SpinParams, x: C64) -> Result<Self> {
        params.validate()?;
        let rp = ReflectParams { params, x };
        if rp.limit_warning().is_none() && !(params.s - x.re > 0.0) {
            return Err(Error::EndpointSingularity(format!("Re(s - x) = {} must be positive", params.s - x.re)));
        }
        if !(params.g + x.re > 0.0) {
            return Err(Error::EndpointSingularity(format!("Re(g + x) = {} must be positive", params.g + x.re)));
        }
        Ok(rp)
    }

    /// Eigenfunction point `x = i lambda`.
    pub fn spectral(params: SpinParams, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidParams(format!("lambda = {lambda} must be real and finite")));
        }
        Self::new(params, C64::new(0.0, lambda))
    }

    pub fn limit_warning(&self) -> Option<LimitWarning> {
        let d = (C64::new(self.params.s, 0.0) - self.x).norm();
        (d < IDENTITY_LIMIT).then_some(LimitWarning { distance: d })
    }

    fn s(&self) -> C64 {
        C64::new(self.params.s, 0.0)
    }

    fn g(&self) -> C64 {
        C64::new(self.params.g, 0.0)
    }

    fn ib(&self) -> C64 {
        I * self.params.beta
    }
}

/// Normalisation `C(s, x) = Gamma(g + x)/Gamma(g + s)` of `K(s, x) 1`.
pub fn normalization(params: &SpinParams, x: C64) -> Result<C64> {
    gamma_ratio(&[x + params.g], &[C64::new(params.g + params.s, 0.0)])
}

const NODES: usize = 48;
const NODES_COARSE: usize = 32;

fn v1_with(rp: &ReflectParams, psi: &AnalyticFn, z: C64, n: usize) -> Result<C64> {
    let (s, g, x, ib) = (rp.s(), rp.g(), rp.x, rp.ib());
    let zp = z + ib;
    let zm = z - ib;
    let e = -(s + x);
    let f = |t: f64| {
        let den = zp - zm * t;
        let arg = ib * (zp + zm * t) / den;
        (e * den.ln()).exp() * psi.eval(arg)
    };
    let integral = beta_integral_n(g + x, s - x, f, n)?;
    let pref = ((s + x) * (2.0 * ib).ln() - log_gamma(s - x)?).exp();
    Ok(pref * integral)
}

/// `[K psi](z)` by the Möbius-path beta integral; endpoint powers are in the
/// Gauss–Jacobi weights. Within [`IDENTITY_LIMIT`] of `x = s` returns `psi(z)`.
pub fn reflect_v1(rp: &ReflectParams, psi: &AnalyticFn, z: HPoint) -> Result<C64> {
    if rp.limit_warning().is_some() {
        return Ok(psi.eval(z.z()));
    }
    v1_with(rp, psi, z.z(), NODES)
}

/// Integrand of the affine-path representation and its `z`-derivatives.
fn v2_with(rp: &ReflectParams, psi: &AnalyticFn, z: C64, order: usize, n: usize) -> Result<C64> {
    let (s, g, x, ib) = (rp.s(), rp.g(), rp.x, rp.ib());
    let zm = z - ib;
    let e = x - g;
    let inner = |k: usize| -> Result<C64> {
        if k > 0 && !psi.has_deriv(k) {
            return Err(Error::MissingDerivative(k));
        }
        let f = |t: f64| {
            let a = zm * t + ib;
            let b = a + ib;
            let lb = b.ln();
            let p0 = (e * lb).exp();
            match k {
                0 => p0 * psi.eval(a),
                1 => {
                    let p1 = e * ((e - 1.0) * lb).exp();
                    t * (p1 * psi.eval(a) + p0 * psi.deriv(a, 1))
                }
                _ => {
                    let p1 = e * ((e - 1.0) * lb).exp();
                    let p2 = e * (e - 1.0) * ((e - 2.0) * lb).exp();
                    t * t * (p2 * psi.eval(a) + 2.0 * p1 * psi.deriv(a, 1) + p0 * psi.deriv(a, 2))
                }
            }
        };
        beta_integral_n(g + x, s - x, f, n)
    };
    let zp = z + ib;
    let q = g - s;
    let pref = ((s - x) * (2.0 * ib).ln() - log_gamma(s - x)?).exp();
    let p0 = (q * zp.ln()).exp();
    let p1 = q * p0 / zp;
    let p2 = q * (q - 1.0) * p0 / (zp * zp);
    let v = match order {
        0 => p0 * inner(0)?,
        1 => p1 * inner(0)? + p0 * inner(1)?,
        2 => p2 * inner(0)? + 2.0 * p1 * inner(1)? + p0 * inner(2)?,
        k => return Err(Error::MissingDerivative(k)),
    };
    Ok(pref * v)
}

/// `[K psi](z)` (order 0) or its first or second `z`-derivative by the
/// affine-path beta integral, differentiating under the integral sign.
pub fn reflect_v2(rp: &ReflectParams, psi: &AnalyticFn, z: HPoint, order: usize) -> Result<C64> {
    if rp.limit_warning().is_some() {
        return psi.deriv_strict(z.z(), order).or_else(|_| Ok(psi.deriv(z.z(), order)));
    }
    v2_with(rp, psi, z.z(), order, NODES)
}

/// V1 or V2 with an error estimate from a coarser rule.
pub fn reflect_eval(rep: Representation, rp: &ReflectParams, psi: &AnalyticFn, z: HPoint) -> Result<KernelEval> {
    let (fine, coarse) = match rep {
        Representation::V1 => (v1_with(rp, psi, z.z(), NODES)?, v1_with(rp, psi, z.z(), NODES_COARSE)?),
        Representation::V2 => (v2_with(rp, psi, z.z(), 0, NODES)?, v2_with(rp, psi, z.z(), 0, NODES_COARSE)?),
        Representation::V3 => {
            return Err(Error::InvalidParams("V3 needs a half-plane grid; use reflect_v3".into()))
        }
    };
    Ok(KernelEval { value: fine, est_error: (fine - coarse).norm(), representation: rep })
}

/// Edge exponents `(g + x, s - x, 3s - g)` at the internal vertex of the
/// double-integral kernel, checked for convergence of both integrals.
pub fn v3_exponents(rp: &ReflectParams, psi_decay: f64) -> Result<[C64; 3]> {
    let (s, g, x) = (rp.s(), rp.g(), rp.x);
    let e = [g + x, s - x, 3.0 * s - g];
    for (name, v) in ["g + x", "s - x", "3s - g"].iter().zip(e) {
        if !(v.re > 0.0) {
            return Err(Error::Divergence(format!("edge exponent {name} = {v} must have positive real part")));
        }
    }
    // large-w decay of the outer integrand: 2s + (g - Re x) + d > 2s
    if !(psi_decay + g.re - x.re > 0.0) {
        return Err(Error::Divergence(format!(
            "outer integrand decays like |w|^-(2s + {}), not integrable",
            psi_decay + g.re - x.re
        )));
    }
    Ok(e)
}

/// A compact polar grid sized for the nested four-dimensional integral.
pub fn v3_grid(s: f64) -> Result<HQuadGrid> {
    HQuadGrid::new(s, Layout::Polar { angular_nodes: 10, radial_panels: 2, radial_nodes: 6, octaves: 30, octave_split: 1 })
}

/// Same grid with the given number of radial octaves.
fn with_octaves(grid: &HQuadGrid, n: usize) -> Result<HQuadGrid> {
    match grid.layout {
        Layout::Polar { angular_nodes, radial_panels, radial_nodes, octave_split, .. } => HQuadGrid::new(
            grid.s,
            Layout::Polar { angular_nodes, radial_panels, radial_nodes, octaves: n, octave_split },
        ),
        Layout::Strip { .. } => Err(Error::InvalidParams("the double integral needs a polar grid".into())),
    }
}

fn coarsened(grid: &HQuadGrid) -> Result<HQuadGrid> {
    let layout = match grid.layout {
        Layout::Polar { angular_nodes, radial_panels, radial_nodes, octaves, octave_split } => Layout::Polar {
            angular_nodes: (angular_nodes * 3 / 4).max(4),
            radial_panels,
            radial_nodes: (radial_nodes * 3 / 4).max(4),
            octaves,
            octave_split,
        },
        Layout::Strip { .. } => {
            return Err(Error::InvalidParams("the double integral needs a polar grid".into()))
        }
    };
    HQuadGrid::new(grid.s, layout)
}

/// Octaves needed for an algebraic tail `r^{-q-1}` (after the measure) to
/// drop below `2^{-bits}`, capped where `1 - t` underflows in the radial map.
fn tail_octaves(q: f64, bits: f64) -> usize {
    ((bits / q).ceil() as usize).min(50)
}

/// Grid for the double integral. The outer integrand decays past the
/// measure by `q = g - Re x + d`, so the radial rule is lengthened until that
/// tail is below `2^{-32}` (or `r ~ 2^50`). The inner rule must reach as far:
/// for a distant outer node the inner integrand spreads over every scale up
/// to it.
fn v3_grids(rp: &ReflectParams, psi: &AnalyticFn, grid: &HQuadGrid) -> Result<(HQuadGrid, HQuadGrid)> {
    let Layout::Polar { octaves, .. } = grid.layout else {
        return Err(Error::InvalidParams("the double integral needs a polar grid".into()));
    };
    let q = psi.decay_exponent + rp.params.g - rp.x.re;
    let g = with_octaves(grid, octaves.max(tail_octaves(q, 32.0)))?;
    Ok((g.clone(), g))
}

fn v3_sum(rp: &ReflectParams, psi: &AnalyticFn, z: C64, grids: &(HQuadGrid, HQuadGrid), e: &[C64; 3]) -> C64 {
    let (g, x, ib) = (rp.g(), rp.x, rp.ib());
    let f = psi.handle();
    let ew = x - g;
    let mut outer_anchors = vec![z, ib];
    outer_anchors.extend(&psi.anchors);
    grids.0.integrate_anchored(&outer_anchors, |w| {
        let wc = w.conj();
        let k = grids.1.integrate_anchored_seq(&[z, ib, w], |v| {
            let vc = v.conj();
            (-(e[0] * (z - vc).ln() + e[1] * (ib - vc).ln() + e[2] * (v - wc).ln())).exp()
        });
        k * (ew * (w + ib).ln()).exp() * f(w)
    })
}

/// `[K psi](z)` as the double half-plane integral with kernel
/// `(z - conj v)^{-(g+x)} (i beta - conj v)^{-(s-x)} (v - conj w)^{-(3s-g)} (w + i beta)^{x-g}`.
/// Both integrals are split by a partition of unity over their anchor
/// points (`z`, `i beta`, the anchors of `psi` and, inside, the outer node).
/// The radial octaves of `grid` are adjusted to each integrand's decay. The
/// error estimate compares with a coarser grid of the same shape.
pub fn reflect_v3(rp: &ReflectParams, psi: &AnalyticFn, z: HPoint, grid: &HQuadGrid) -> Result<KernelEval> {
    let e = v3_exponents(rp, psi.decay_exponent)?;
    if (grid.s - rp.params.s).abs() > 1e-15 {
        return Err(Error::InvalidParams(format!("grid spin {} differs from s = {}", grid.s, rp.params.s)));
    }
    let (s, g, x, ib) = (rp.s(), rp.g(), rp.x, rp.ib());
    let z = z.z();
    let pref = C64::new(0.0, 2.0 * PI * s.re).exp()
        * ((s - x) * (2.0 * ib).ln()).exp()
        * gamma_ratio(&[g + x, 3.0 * s - g], &[2.0 * s, 2.0 * s])?
        * ((g - s) * (z + ib).ln()).exp();
    let fine = pref * v3_sum(rp, psi, z, &v3_grids(rp, psi, grid)?, &e);
    let coarse = pref * v3_sum(rp, psi, z, &v3_grids(rp, psi, &coarsened(grid)?)?, &e);
    if !fine.is_finite() {
        return Err(Error::Convergence("double integral produced a non-finite value".into()));
    }
    Ok(KernelEval { value: fine, est_error: (fine - coarse).norm(), representation: Representation::V3 })
}

/// `K(s, i lambda) 1 / C(s, i lambda)`, which equals `Psi_lambda(z)`.
pub fn eigenfunction_via_reflection(params: &SpinParams, lambda: f64, z: HPoint) -> Result<C64> {
    let rp = ReflectParams::spectral(*params, lambda)?;
    let v = reflect_v2(&rp, &AnalyticFn::constant(C64::new(1.0, 0.0)), z, 0)?;
    let log_c = log_gamma(C64::new(params.g, lambda))? - log_gamma(C64::new(params.g + params.s, 0.0))?;
    Ok(v * (-log_c).exp())
}

#[cfg(test)]
mod tests;
