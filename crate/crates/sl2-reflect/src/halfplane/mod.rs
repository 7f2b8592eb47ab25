//! The holomorphic Hilbert space on the upper half-plane: the measure
//! `(2s-1)/pi (2 Im z)^{2s-2} d^2 z`, its scalar product, the reproducing
//! kernel `e^{i pi s}(z - conj w)^{-2s}`, and function handles with optional
//! analytic derivatives.

pub mod grid;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

pub use grid::{angular_rule, grids_built, HQuadGrid, Layout};

use crate::error::{Error, Result};
use crate::params::SpinParams;
use crate::specfun::gamma::gamma_ratio;

/// A point with strictly positive imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint(C64);

impl HPoint {
    pub fn new(z: C64) -> Result<Self> {
        if z.im > 0.0 && z.is_finite() {
            Ok(HPoint(z))
        } else {
            Err(Error::InvalidParams(format!("{z} is not in the open upper half-plane")))
        }
    }

    pub fn z(&self) -> C64 {
        self.0
    }
}

/// Propagator `(z - conj w)^{-e}` on the principal branch. Both points lie in
/// the closed upper half-plane with at least one strictly inside, so the base
/// is in the open upper half-plane.
#[inline]
pub fn prop(z: C64, w: C64, e: C64) -> C64 {
    let d = z - w.conj();
    assert!(d.im > 0.0, "propagator base {d} left the upper half-plane");
    (-e * d.ln()).exp()
}

/// Reproducing kernel `e^{i pi s}(z - conj w)^{-2s}`.
#[inline]
pub fn repro_kernel(s: f64, z: C64, w: C64) -> C64 {
    C64::new(0.0, PI * s).exp() * prop(z, w, C64::new(2.0 * s, 0.0))
}

pub type CFn = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

/// A function on the upper half-plane with optional analytic derivatives.
/// `decay_exponent` is the claimed `d` in `|f(z)| = O(|z|^{-d})`.
#[derive(Clone)]
pub struct AnalyticFn {
    eval: CFn,
    deriv1: Option<CFn>,
    deriv2: Option<CFn>,
    pub decay_exponent: f64,
    /// Points `a` such that the function is concentrated near `conj a`
    /// (mirror images of its singularities); used to place quadrature grids.
    pub anchors: Vec<C64>,
}

impl fmt::Debug for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFn")
            .field("deriv1", &self.deriv1.is_some())
            .field("deriv2", &self.deriv2.is_some())
            .field("decay_exponent", &self.decay_exponent)
            .field("anchors", &self.anchors)
            .finish()
    }
}

/// Cauchy-circle derivative of order 1 or 2: radius `min(Im z / 2, 1)`,
/// 32 equispaced nodes.
pub fn cauchy_derivative<F: Fn(C64) -> C64 + ?Sized>(f: &F, z: C64, order: u32) -> C64 {
    const M: usize = 32;
    let r = (0.5 * z.im).min(1.0);
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..M {
        let th = 2.0 * PI * j as f64 / M as f64;
        let u = C64::from_polar(1.0, th);
        acc += f(z + r * u) * u.powi(-(order as i32));
    }
    let fact = if order == 2 { 2.0 } else { 1.0 };
    acc * fact / (M as f64 * r.powi(order as i32))
}

impl AnalyticFn {
    pub fn new<F: Fn(C64) -> C64 + Send + Sync + 'static>(f: F, decay_exponent: f64) -> Self {
        AnalyticFn { eval: Arc::new(f), deriv1: None, deriv2: None, decay_exponent, anchors: vec![] }
    }

    /// Records quadrature anchors, keeping those in the upper half-plane.
    pub fn with_anchors(mut self, anchors: &[C64]) -> Self {
        self.anchors = anchors.iter().copied().filter(|a| a.im > 0.0).collect();
        self
    }

    pub fn with_deriv1<F: Fn(C64) -> C64 + Send + Sync + 'static>(mut self, f: F) -> Self {
        self.deriv1 = Some(Arc::new(f));
        self
    }

    pub fn with_deriv2<F: Fn(C64) -> C64 + Send + Sync + 'static>(mut self, f: F) -> Self {
        self.deriv2 = Some(Arc::new(f));
        self
    }

    /// The constant function.
    pub fn constant(c: C64) -> Self {
        AnalyticFn::new(move |_| c, 0.0).with_deriv1(|_| C64::new(0.0, 0.0)).with_deriv2(|_| C64::new(0.0, 0.0))
    }

    /// `(z + shift)^{-e}` with `Im shift > 0`.
    pub fn power(shift: C64, e: C64) -> Self {
        AnalyticFn::new(move |z| (-e * (z + shift).ln()).exp(), e.re)
            .with_deriv1(move |z| -e * (-(e + 1.0) * (z + shift).ln()).exp())
            .with_deriv2(move |z| e * (e + 1.0) * (-(e + 2.0) * (z + shift).ln()).exp())
            .with_anchors(&[-shift.conj()])
    }

    /// `e^{i k z}`, bounded for `k >= 0`.
    pub fn exp_i(k: f64) -> Self {
        let ik = C64::new(0.0, k);
        AnalyticFn::new(move |z| (ik * z).exp(), 0.0)
            .with_deriv1(move |z| ik * (ik * z).exp())
            .with_deriv2(move |z| ik * ik * (ik * z).exp())
    }

    /// A polynomial given by ascending coefficients.
    pub fn polynomial(coeffs: Vec<C64>) -> Self {
        let d1: Vec<C64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
        let d2: Vec<C64> = d1.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
        let horner = |cs: Vec<C64>| move |z: C64| cs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let degree = coeffs.len().saturating_sub(1) as f64;
        AnalyticFn::new(horner(coeffs), -degree).with_deriv1(horner(d1)).with_deriv2(horner(d2))
    }

    #[inline]
    pub fn eval(&self, z: C64) -> C64 {
        (self.eval)(z)
    }

    pub fn has_deriv(&self, order: usize) -> bool {
        match order {
            0 => true,
            1 => self.deriv1.is_some(),
            2 => self.deriv2.is_some(),
            _ => false,
        }
    }

    /// Analytic derivative if provided, else [`Error::MissingDerivative`].
    pub fn deriv_strict(&self, z: C64, order: usize) -> Result<C64> {
        match order {
            0 => Ok(self.eval(z)),
            1 => self.deriv1.as_ref().map(|f| f(z)).ok_or(Error::MissingDerivative(1)),
            2 => self.deriv2.as_ref().map(|f| f(z)).ok_or(Error::MissingDerivative(2)),
            k => Err(Error::MissingDerivative(k)),
        }
    }

    /// Derivative of order 0, 1 or 2, falling back to the Cauchy circle.
    pub fn deriv(&self, z: C64, order: usize) -> C64 {
        match self.deriv_strict(z, order) {
            Ok(v) => v,
            Err(_) => cauchy_derivative(&*self.eval, z, order as u32),
        }
    }

    /// Evaluation handle, for closures that need to own it.
    pub fn handle(&self) -> CFn {
        self.eval.clone()
    }
}

/// Check the declared decay of an integrand: the radius of the measure
/// requires more than `2s` (exactly `2s` is admitted for kernels whose
/// leading angular average vanishes). Spot checks on octave pairs
/// `(r, 2r)` for `r` spread over eight octaves above `10^3` reject claims the
/// function visibly violates. The steepest pair counts, so that beating
/// factors `|z|^{+-i lambda}` do not masquerade as slow decay.
fn check_decay<F: Fn(C64) -> C64 + ?Sized>(f: &F, decay: f64, s: f64, grid: &HQuadGrid) -> Result<()> {
    if decay < 2.0 * s - 1e-12 {
        return Err(Error::Divergence(format!(
            "declared decay exponent {decay} is below 2s = {}",
            2.0 * s
        )));
    }
    let c = C64::new(grid.center, 0.0);
    let r1 = 1e3 * grid.scale.max(1.0);
    let seen = (0..=16)
        .filter_map(|k| {
            let r = r1 * (k as f64 / 2.0).exp2();
            let a = f(c + C64::new(0.0, r)).norm();
            let b = f(c + C64::new(0.0, 2.0 * r)).norm();
            (a > 0.0 && b > 0.0).then(|| (a / b).log2())
        })
        .fold(f64::NEG_INFINITY, f64::max);
    if seen.is_finite() && seen < decay - 0.5 {
        return Err(Error::Divergence(format!(
            "declared decay {decay} but observed {seen:.3} at |z| = {r1:e}"
        )));
    }
    Ok(())
}

/// `int Dz f(z)` over the given grid.
pub fn quad_halfplane<F: Fn(C64) -> C64 + Sync>(
    f: F,
    decay_exponent: f64,
    params: &SpinParams,
    grid: &HQuadGrid,
) -> Result<C64> {
    check_spin(params, grid)?;
    if !matches!(grid.layout, Layout::Strip { .. }) {
        check_decay(&f, decay_exponent, params.s, grid)?;
    }
    Ok(grid.integrate(f))
}

/// [`quad_halfplane`] with panel doubling until two successive values differ
/// by less than `tol`. Returns the value and the last difference.
pub fn quad_halfplane_adaptive<F: Fn(C64) -> C64 + Sync>(
    f: F,
    decay_exponent: f64,
    params: &SpinParams,
    grid: &HQuadGrid,
    tol: f64,
    max_refinements: usize,
) -> Result<(C64, f64)> {
    let mut g = grid.clone();
    let mut prev = quad_halfplane(&f, decay_exponent, params, &g)?;
    let mut last = f64::INFINITY;
    for _ in 0..max_refinements {
        g = g.refined()?;
        let next = g.integrate(&f);
        last = (next - prev).norm();
        if last <= tol {
            return Ok((next, last));
        }
        prev = next;
    }
    Err(Error::Convergence(format!("panel doubling stalled at {last:e} above {tol:e}")))
}

fn check_spin(params: &SpinParams, grid: &HQuadGrid) -> Result<()> {
    if (params.s - grid.s).abs() > 1e-14 {
        return Err(Error::InvalidParams(format!(
            "grid built for s = {} used with s = {}",
            grid.s, params.s
        )));
    }
    Ok(())
}

/// `int Dw e^{i pi s}(z - conj w)^{-2s} psi(w)`, which reproduces `psi(z)`.
/// The grid is re-centred on `z`.
///
/// For `psi` that does not decay (`decay_exponent < 1`) the integral is only
/// conditionally convergent and its value depends on how the plane is
/// exhausted (angular-first polar sums give `psi(inf)/2` for a constant).
/// Such `psi` are multiplied by the taper `((z + ib)/(w + ib))^2`, `b = Im z`,
/// which equals 1 at `w = z` and leaves the value unchanged for every `psi`
/// in the Hilbert space; for bounded `psi` it selects the limit of
/// absolutely convergent integrals.
pub fn reproduce(psi: &AnalyticFn, params: &SpinParams, z: HPoint, grid: &HQuadGrid) -> Result<C64> {
    let z = z.z();
    let s = params.s;
    let g = match grid.layout {
        Layout::Polar { .. } => grid.around(z),
        Layout::Strip { .. } => grid.clone(),
    };
    let f = psi.handle();
    let decay = psi.decay_exponent.max(0.0);
    if decay < 1.0 {
        let ib = C64::new(0.0, z.im);
        let zb = z + ib;
        return quad_halfplane(
            move |w| {
                let t = zb / (w + ib);
                repro_kernel(s, z, w) * f(w) * t * t
            },
            2.0 * s + decay + 2.0,
            params,
            &g,
        );
    }
    quad_halfplane(move |w| repro_kernel(s, z, w) * f(w), 2.0 * s + decay, params, &g)
}

/// Hermitian scalar product `int Dz conj(f(z)) h(z)`.
pub fn scalar_product(f: &AnalyticFn, h: &AnalyticFn, params: &SpinParams, grid: &HQuadGrid) -> Result<C64> {
    let (ff, hh) = (f.handle(), h.handle());
    quad_halfplane(move |z| ff(z).conj() * hh(z), f.decay_exponent + h.decay_exponent, params, grid)
}

/// Closed form of `(2s-1)/pi int_0^pi (2 sin phi)^{2s-2} e^{2 a phi} dphi`,
/// namely `e^{pi a} Gamma(2s) / (Gamma(s + i a) Gamma(s - i a))`.
pub fn angular_cauchy_integral(s: f64, a: C64) -> Result<C64> {
    let ia = C64::new(0.0, 1.0) * a;
    let two_s = C64::new(2.0 * s, 0.0);
    Ok((PI * a).exp() * gamma_ratio(&[two_s], &[s + ia, s - ia])?)
}

/// The same integral by Gauss–Jacobi quadrature with `n` nodes.
pub fn angular_cauchy_quadrature(s: f64, a: C64, n: usize) -> Result<C64> {
    Ok(angular_rule(s, n)?.iter().map(|&(phi, w)| (2.0 * a * phi).exp() * w).sum())
}
