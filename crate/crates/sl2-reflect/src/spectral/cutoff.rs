//! Scalar products cut off at `|z| <= R` and their large-`R` asymptotics.

use crate::error::{Error, Result};
use crate::halfplane::{angular_cauchy_integral, angular_rule, AnalyticFn};
use crate::specfun::asym::asym_coeff_c;
use crate::specfun::quad::{gauss_jacobi, gauss_legendre};
use crate::{SpinParams, C64};

/// Node counts for the polar cut-off product.
#[derive(Debug, Clone, Copy)]
pub struct CutoffRule {
    pub angular_nodes: usize,
    /// Gauss–Legendre nodes per panel of width `log_panel` in `ln r`.
    pub radial_nodes: usize,
    pub log_panel: f64,
}

impl Default for CutoffRule {
    fn default() -> Self {
        CutoffRule { angular_nodes: 40, radial_nodes: 12, log_panel: 0.35 }
    }
}

/// Radial nodes with weights carrying `r^{2s-1} dr`, grouped by segment:
/// Gauss–Jacobi on `[0, r0]`, then panels uniform in `ln r` between
/// consecutive cut-off radii.
fn radial_segments(s: f64, radii: &[f64], r0: f64, rule: &CutoffRule) -> Result<Vec<Vec<(f64, f64)>>> {
    let r0 = r0.min(radii[0]);
    let gj = gauss_jacobi(2 * rule.radial_nodes, 0.0, 2.0 * s - 1.0)?;
    let scale = (0.5 * r0).powf(2.0 * s);
    let mut segs = vec![gj.nodes.iter().zip(&gj.weights).map(|(&x, &w)| (0.5 * r0 * (1.0 + x), w * scale)).collect()];
    let gl = gauss_legendre(rule.radial_nodes);
    let mut lo_r = r0;
    for &r_cut in radii {
        let mut seg = Vec::new();
        if r_cut > lo_r {
            let (u0, u1) = (lo_r.ln(), r_cut.ln());
            let panels = ((u1 - u0) / rule.log_panel).ceil() as usize;
            let h = (u1 - u0) / panels as f64;
            for k in 0..panels {
                let lo = u0 + h * k as f64;
                for (u, w) in gl.mapped(lo, lo + h) {
                    let r = u.exp();
                    seg.push((r, w * r.powf(2.0 * s)));
                }
            }
            lo_r = r_cut;
        }
        segs.push(seg);
    }
    Ok(segs)
}

/// `<f|h>_R = (2s-1)/pi int_0^pi dphi (2 sin phi)^{2s-2} int_0^R dr r^{2s-1} conj(f) h`.
pub fn scalar_product_cutoff(f: &AnalyticFn, h: &AnalyticFn, params: &SpinParams, r_cut: f64) -> Result<C64> {
    scalar_product_cutoff_with(f, h, params, r_cut, &CutoffRule::default())
}

pub fn scalar_product_cutoff_with(
    f: &AnalyticFn,
    h: &AnalyticFn,
    params: &SpinParams,
    r_cut: f64,
    rule: &CutoffRule,
) -> Result<C64> {
    Ok(cutoff_profile(f, h, params, &[r_cut], rule)?[0])
}

/// Cut-off products at several radii (ascending) from one radial sweep.
pub fn cutoff_profile(
    f: &AnalyticFn,
    h: &AnalyticFn,
    params: &SpinParams,
    radii: &[f64],
    rule: &CutoffRule,
) -> Result<Vec<C64>> {
    if radii.is_empty() || radii.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParams("cut-off radii must be non-empty and ascending".into()));
    }
    if !radii.iter().all(|&r| r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParams(format!("cut-off radii {radii:?}")));
    }
    let ang = angular_rule(params.s, rule.angular_nodes)?;
    let segs = radial_segments(params.s, radii, params.beta, rule)?;
    let mut out = Vec::with_capacity(radii.len());
    let mut acc = C64::new(0.0, 0.0);
    for (k, seg) in segs.iter().enumerate() {
        for &(phi, wa) in &ang {
            let e = C64::from_polar(1.0, phi);
            let inner: C64 = seg.iter().map(|&(r, wr)| f.eval(e * r).conj() * h.eval(e * r) * wr).sum();
            acc += inner * wa;
        }
        if k > 0 {
            out.push(acc);
        }
    }
    if !acc.is_finite() {
        return Err(Error::Convergence(format!("non-finite cut-off product up to R = {}", radii[radii.len() - 1])));
    }
    Ok(out)
}

/// Large-`R` form of `<Psi_rho|Psi_l>_R` from the radial Wronskian boundary
/// term: with `c` the asymptotic coefficient of the eigenfunction,
/// `sum_{σ,τ = ±} i(σl + τrho)/(rho^2 - l^2) conj(c(τrho)) c(σl) R^{i(σl - τrho)} A(-(σl + τrho)/2)`
/// where `A(a) = e^{pi a} Gamma(2s)/Gamma(s ± i a)` is the angular integral.
/// The `σ = -1` pair is the `l -> -l` image of the `σ = +1` pair.
pub fn cutoff_asymptotic(params: &SpinParams, lambda: f64, rho: f64, r_cut: f64) -> Result<C64> {
    if (rho * rho - lambda * lambda).abs() < 1e-14 {
        return Err(Error::Pole(format!("rho^2 = lambda^2 at ({lambda}, {rho})")));
    }
    let ln_r = r_cut.ln();
    let mut acc = C64::new(0.0, 0.0);
    for sigma in [1.0, -1.0] {
        for tau in [1.0, -1.0] {
            let (l, r) = (sigma * lambda, tau * rho);
            let coef = asym_coeff_c(params, r)?.conj() * asym_coeff_c(params, l)?;
            let phase = C64::new(0.0, (l - r) * ln_r).exp();
            let ang = angular_cauchy_integral(params.s, C64::new(-0.5 * (l + r), 0.0))?;
            acc += C64::new(0.0, l + r) / (rho * rho - lambda * lambda) * coef * phase * ang;
        }
    }
    Ok(acc)
}

/// Gap between the cut-off product and [`cutoff_asymptotic`], averaged over
/// `samples` radii `R e^{t}` with `t` covering one period `2 pi / |l - rho|`
/// of the `cos[(l - rho) ln R]` terms. Returns `(mean |gap|, rms of R |gap|)`;
/// the second number is the amplitude of the `1/R` correction.
pub fn cutoff_gap_averaged(
    f: &AnalyticFn,
    h: &AnalyticFn,
    params: &SpinParams,
    lambda: f64,
    rho: f64,
    r_cut: f64,
    samples: usize,
) -> Result<(f64, f64)> {
    let period = 2.0 * std::f64::consts::PI / (lambda - rho).abs();
    let radii: Vec<f64> = (0..samples).map(|k| r_cut * (period * k as f64 / samples as f64).exp()).collect();
    let vals = cutoff_profile(f, h, params, &radii, &CutoffRule::default())?;
    let (mut mean, mut amp) = (0.0, 0.0);
    for (&r, v) in radii.iter().zip(vals) {
        let gap = (v - cutoff_asymptotic(params, lambda, rho, r)?).norm();
        mean += gap;
        amp += (gap * r).powi(2);
    }
    let n = samples as f64;
    Ok((mean / n, (amp / n).sqrt()))
}
