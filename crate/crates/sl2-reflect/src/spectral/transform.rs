//! Maps between the half-plane space and the half-line space with density
//! `m(y) = y^{s+g-1} (1+y)^{s-g}`.

use std::sync::Arc;

use super::eigen::Eigenfunction;
use super::measure::SpectralMeasure;
use crate::error::{Error, Result};
use crate::halfplane::{repro_kernel, reproduce, AnalyticFn, HPoint, HQuadGrid};
use crate::specfun::gamma::log_gamma;
use crate::specfun::hyp::hyp2f1;
use crate::specfun::quad::{cpow_real, gauss_jacobi, gauss_legendre};
use crate::{SpinParams, C64, I};

/// A function on `y >= 0` with `|chi(y)| = O(y^growth)` as `y -> inf`
/// (`-inf` for faster than any power).
#[derive(Clone)]
pub struct HalfLineFn {
    eval: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    pub growth: f64,
}

impl std::fmt::Debug for HalfLineFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HalfLineFn").field("growth", &self.growth).finish()
    }
}

impl HalfLineFn {
    pub fn new<F: Fn(f64) -> C64 + Send + Sync + 'static>(f: F, growth: f64) -> Self {
        HalfLineFn { eval: Arc::new(f), growth }
    }

    pub fn zero() -> Self {
        HalfLineFn::new(|_| C64::new(0.0, 0.0), f64::NEG_INFINITY)
    }

    /// `Phi_l(y)`, decaying like `y^{-s}`.
    pub fn eigen(params: SpinParams, lambda: f64) -> Self {
        let (a, b, c) = (C64::new(params.s, lambda), C64::new(params.s, -lambda), C64::new(params.s + params.g, 0.0));
        HalfLineFn::new(move |y| hyp2f1(a, b, c, C64::new(-y, 0.0)).unwrap_or(C64::new(f64::NAN, f64::NAN)), -params.s)
    }

    pub fn eval(&self, y: f64) -> C64 {
        (self.eval)(y)
    }
}

/// Nodes and weights for `int_0^inf m(y) h(y) dy`: Gauss–Jacobi with the
/// `y^{s+g-1}` endpoint weight on `[0, 1]`, then `y = t/(1-t)` with two panels
/// per halving of `1 - t` until `1 - t < tail`.
#[derive(Debug, Clone)]
pub struct HalfLineRule {
    pub nodes: Vec<(f64, f64)>,
}

impl HalfLineRule {
    pub fn new(params: &SpinParams, n0: usize, n: usize, tail: f64) -> Result<Self> {
        let (s, g) = (params.s, params.g);
        let a = s + g;
        let gj = gauss_jacobi(n0, 0.0, a - 1.0)?;
        let scale = 0.5f64.powf(a);
        let mut nodes = Vec::new();
        for (&x, &w) in gj.nodes.iter().zip(&gj.weights) {
            let y = 0.5 * (1.0 + x);
            nodes.push((y, w * scale * (1.0 + y).powf(s - g)));
        }
        let gl = gauss_legendre(n);
        let mut gap = 0.5;
        while gap > tail {
            let mid = gap * 0.5f64.sqrt();
            for (lo, hi) in [(1.0 - gap, 1.0 - mid), (1.0 - mid, 1.0 - 0.5 * gap)] {
                for (t, w) in gl.mapped(lo, hi) {
                    let om = 1.0 - t;
                    let y = t / om;
                    nodes.push((y, w / (om * om) * SpectralMeasure::new(*params).m(y)));
                }
            }
            gap *= 0.5;
        }
        Ok(HalfLineRule { nodes })
    }

    /// Default rule, accurate to about `1e-9` for integrands decaying like
    /// `y^{-1-s}`.
    pub fn standard(params: &SpinParams) -> Result<Self> {
        Self::new(params, 40, 16, 1e-13)
    }

    /// `int_0^inf m(y) h(y) dy`.
    pub fn integrate<F: Fn(f64) -> C64>(&self, h: F) -> C64 {
        self.nodes.iter().map(|&(y, w)| h(y) * w).sum()
    }
}

fn uadj_kernel(params: &SpinParams, z: C64, y: f64) -> C64 {
    repro_kernel(params.s, z, C64::new(0.0, params.beta * (1.0 + 2.0 * y)))
}

/// `[U psi](y) = int Dz e^{i pi s} (i beta (1 + 2y) - conj z)^{-2s} psi(z)`,
/// which is `psi` reproduced at `i beta (1 + 2y)`.
pub fn transform_u(psi: &AnalyticFn, params: &SpinParams, y: f64, grid: &HQuadGrid) -> Result<C64> {
    if !(y >= 0.0) {
        return Err(Error::InvalidParams(format!("half-line point y = {y}")));
    }
    reproduce(psi, params, HPoint::new(C64::new(0.0, params.beta * (1.0 + 2.0 * y)))?, grid)
}

/// `U psi` at many `y` on one fixed grid: `psi` is sampled once.
#[derive(Debug, Clone)]
pub struct UTransform {
    s: f64,
    beta: f64,
    samples: Vec<(C64, C64)>,
}

impl UTransform {
    /// The grid is placed at `(0, beta)`; `psi` must decay (exponent at
    /// least `2s` for the full integrand after the kernel's `|z|^{-2s}`).
    pub fn new(psi: &AnalyticFn, params: &SpinParams, grid: &HQuadGrid) -> Result<Self> {
        if psi.decay_exponent <= 0.0 {
            return Err(Error::Divergence(format!(
                "U needs a decaying input, declared exponent {}",
                psi.decay_exponent
            )));
        }
        let g = grid.placed(0.0, params.beta);
        let samples = g.nodes().map(|(z, w)| (z, psi.eval(z) * w)).collect();
        Ok(UTransform { s: params.s, beta: params.beta, samples })
    }

    pub fn eval(&self, y: f64) -> C64 {
        let zeta = C64::new(0.0, self.beta * (1.0 + 2.0 * y));
        self.samples.iter().map(|&(z, v)| repro_kernel(self.s, zeta, z) * v).sum()
    }
}

fn check_udag(params: &SpinParams, chi: &HalfLineFn) -> Result<()> {
    // m(y) |kernel| ~ y^{-1}, so chi must decay
    if !(chi.growth < 0.0) {
        return Err(Error::Divergence(format!(
            "U^dagger needs chi = O(y^e) with e < 0, declared {} (s = {})",
            chi.growth, params.s
        )));
    }
    Ok(())
}

/// `[U^dagger chi](z) = int_0^inf m(y) e^{i pi s} (z + i beta (1 + 2y))^{-2s} chi(y) dy`.
pub fn transform_udag(chi: &HalfLineFn, params: &SpinParams, z: HPoint) -> Result<C64> {
    check_udag(params, chi)?;
    let rule = HalfLineRule::standard(params)?;
    Ok(rule.integrate(|y| uadj_kernel(params, z.z(), y) * chi.eval(y)))
}

/// `U^dagger chi` as a half-plane function, with `chi` sampled once on `rule`.
/// Decays like `|z|^{-2s}`.
pub fn udag_function(chi: &HalfLineFn, params: &SpinParams, rule: &HalfLineRule) -> Result<AnalyticFn> {
    check_udag(params, chi)?;
    let samples: Vec<(f64, C64)> = rule
        .nodes
        .iter()
        .map(|&(y, w)| (y, chi.eval(y) * w))
        .filter(|(_, v)| v.norm() > 1e-300)
        .collect();
    let p = *params;
    Ok(AnalyticFn::new(move |z| samples.iter().map(|&(y, v)| uadj_kernel(&p, z, y) * v).sum(), 2.0 * params.s))
}

/// `[U^dagger U psi](z)`, with `U psi` sampled once on `rule`.
pub fn transform_udag_u(
    psi: &AnalyticFn,
    params: &SpinParams,
    z: HPoint,
    grid: &HQuadGrid,
    rule: &HalfLineRule,
) -> Result<C64> {
    let u = UTransform::new(psi, params, grid)?;
    Ok(rule.integrate(|y| uadj_kernel(params, z.z(), y) * u.eval(y)))
}

/// `[J chi](l) = int_0^inf m(y) Phi_l(y) chi(y) dy`.
pub fn index_transform_j(chi: &HalfLineFn, params: &SpinParams, lambda: f64) -> Result<C64> {
    if !(chi.growth < -params.s) {
        return Err(Error::Divergence(format!(
            "J needs chi = O(y^e) with e < -s = {}, declared {}",
            -params.s,
            chi.growth
        )));
    }
    let phi = HalfLineFn::eigen(*params, lambda);
    let rule = HalfLineRule::standard(params)?;
    Ok(rule.integrate(|y| {
        let c = chi.eval(y);
        if c == C64::new(0.0, 0.0) {
            c
        } else {
            phi.eval(y) * c
        }
    }))
}

/// `[T psi](l) = int Dz conj(Psi_l(z)) psi(z)`. `psi` must decay faster than
/// `|z|^{-s}`. The spot check of [`quad_halfplane`] is skipped: the
/// eigenfunction oscillates in `ln |z|` and its decay is known exactly.
pub fn transform_t(psi: &AnalyticFn, params: &SpinParams, lambda: f64, grid: &HQuadGrid) -> Result<C64> {
    if !(psi.decay_exponent > params.s) {
        return Err(Error::Divergence(format!(
            "T needs decay above s = {}, declared {}",
            params.s, psi.decay_exponent
        )));
    }
    if (grid.s - params.s).abs() > 1e-14 {
        return Err(Error::InvalidParams(format!("grid built for s = {} used with s = {}", grid.s, params.s)));
    }
    let e = Eigenfunction::new(*params, lambda)?;
    let f = psi.handle();
    Ok(grid.placed(0.0, params.beta).integrate(move |z| e.eval(z).conj() * f(z)))
}

/// `(chi|chi)` in the half-line space.
pub fn half_line_norm_sq(chi: &HalfLineFn, params: &SpinParams) -> Result<f64> {
    Ok(HalfLineRule::standard(params)?.integrate(|y| C64::new(chi.eval(y).norm_sqr(), 0.0)).re)
}

/// Parameters of the half-line integral identity
/// `int_0^inf y^{r-1} (1+y)^{r-p-q} (y + Z)^{-rho} 2F1(r-p, r-q; r; -y) dy
///  = Gamma(r) Gamma(rho-r+p) Gamma(rho-r+q) / (Gamma(rho) Gamma(rho-r+p+q))
///    2F1(rho-r+p, rho-r+q; rho-r+p+q; 1 - Z)`.
#[derive(Debug, Clone, Copy)]
pub struct MbParams {
    pub rho: C64,
    pub p: C64,
    pub q: C64,
    pub r: C64,
}

impl MbParams {
    /// `r = s + g`, `rho = 2s`, `p = g - i l`, `q = g + i l`.
    pub fn from_spin(params: &SpinParams, lambda: f64) -> Self {
        let (s, g) = (params.s, params.g);
        MbParams {
            rho: C64::new(2.0 * s, 0.0),
            p: C64::new(g, -lambda),
            q: C64::new(g, lambda),
            r: C64::new(s + g, 0.0),
        }
    }
}

/// `Z = 1/2 - i z/(2 beta)`, so that `z + i beta (1 + 2y) = 2 i beta (y + Z)`.
pub fn mb_argument(params: &SpinParams, z: C64) -> C64 {
    0.5 - I * z / (2.0 * params.beta)
}

/// The integral side of the identity, by quadrature.
pub fn mb_integral_side(mb: &MbParams, zarg: C64) -> Result<C64> {
    let MbParams { rho, p, q, r } = *mb;
    if !(r.re > 0.0) {
        return Err(Error::Divergence(format!("y^(r-1) not integrable at 0 for r = {r}")));
    }
    // large y: y^{r-1 + r-p-q - rho} y^{-min(Re(r-p), Re(r-q))}
    let tail = (r - p - q - rho).re + r.re - 1.0 - (r - p).re.min((r - q).re);
    if !(tail < -1.0) {
        return Err(Error::Divergence(format!("integrand decays like y^{tail:.3} at infinity")));
    }
    if zarg.im == 0.0 && zarg.re <= 0.0 {
        return Err(Error::BranchCut(format!("Z = {zarg} on the cut")));
    }
    let (a, b) = (r - p, r - q);
    let h = move |y: f64| {
        cpow_real(1.0 + y, r - p - q) * (-rho * (zarg + y).ln()).exp() * hyp2f1(a, b, r, C64::new(-y, 0.0)).unwrap()
    };
    if r.im != 0.0 {
        return Err(Error::NotApplicable("complex r".into()));
    }
    crate::specfun::quad::half_line_integral(r.re, h)
}

/// The hypergeometric side of the identity.
pub fn mb_closed_side(mb: &MbParams, zarg: C64) -> Result<C64> {
    let MbParams { rho, p, q, r } = *mb;
    let (a, b, c) = (rho - r + p, rho - r + q, rho - r + p + q);
    let pre = (log_gamma(r)? + log_gamma(a)? + log_gamma(b)? - log_gamma(rho)? - log_gamma(c)?).exp();
    Ok(pre * hyp2f1(a, b, c, 1.0 - zarg)?)
}

/// `|integral side - closed side|` of the identity at `Z = zarg`.
pub fn mellin_barnes_identity_check(mb: &MbParams, zarg: C64) -> Result<f64> {
    Ok((mb_integral_side(mb, zarg)? - mb_closed_side(mb, zarg)?).norm())
}

/// The same identity in the eigenfunction normalisation:
/// `|Psi_l(z) - (2 beta)^{2s} Gamma(2s)/Gamma(s ± i l) int m(y) e^{i pi s}(z + i beta(1+2y))^{-2s} Phi_l(y) dy|`.
/// The prefactor `(2 i beta)^{-2s} e^{i pi s} = (2 beta)^{-2s}` links the two forms.
pub fn psi_phi_residual(params: &SpinParams, lambda: f64, z: HPoint) -> Result<f64> {
    let mb = MbParams::from_spin(params, lambda);
    let zarg = mb_argument(params, z.z());
    let s = params.s;
    let integral = mb_integral_side(&mb, zarg)? * (2.0 * params.beta).powf(-2.0 * s);
    let pre = (C64::new((2.0 * params.beta).ln() * 2.0 * s, 0.0) + log_gamma(C64::new(2.0 * s, 0.0))?
        - log_gamma(C64::new(s, lambda))?
        - log_gamma(C64::new(s, -lambda))?)
    .exp();
    let e = Eigenfunction::new(*params, lambda)?;
    Ok((e.eval(z.z()) - pre * integral).norm())
}

#[cfg(test)]
mod tests;
