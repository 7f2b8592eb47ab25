//! The spectral resolution of the reproducing kernel.

use std::f64::consts::PI;

use super::eigen::Eigenfunction;
use super::measure::SpectralMeasure;
use crate::error::{Error, Result};
use crate::halfplane::{repro_kernel, HPoint};
use crate::specfun::quad::gauss_legendre;
use crate::{SpinParams, C64};

const PANEL_NODES: usize = 16;

/// `mu(l) Psi_l(z) conj(Psi_l(w))`.
pub fn completeness_integrand(params: &SpinParams, z: HPoint, w: HPoint, lambda: f64) -> Result<C64> {
    let e = Eigenfunction::new(*params, lambda)?;
    let m = SpectralMeasure::new(*params).mu(lambda);
    if m == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok(m * e.eval(z.z()) * e.eval(w.z()).conj())
}

/// `int_{lo}^{hi} mu Psi(z) conj Psi(w) dl` with about `nodes` Gauss–Legendre
/// nodes in panels of 16.
pub fn completeness_integral(params: &SpinParams, z: HPoint, w: HPoint, lo: f64, hi: f64, nodes: usize) -> Result<C64> {
    let panels = nodes.div_ceil(PANEL_NODES).max(1);
    let h = (hi - lo) / panels as f64;
    let gl = gauss_legendre(PANEL_NODES);
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..panels {
        let a = lo + h * k as f64;
        for (l, wt) in gl.mapped(a, a + h) {
            acc += completeness_integrand(params, z, w, l)? * wt;
        }
    }
    Ok(acc)
}

/// `I(z, conj w) = int_{-L}^{L} mu(l) Psi_l(z) conj(Psi_l(w)) dl`, computed on
/// `[0, L]` and doubled (the integrand is even). Fails with
/// [`Error::Truncation`] when the integrand at `L` is not below `1e-3` of the
/// total.
pub fn completeness_kernel(params: &SpinParams, z: HPoint, w: HPoint, lambda_cut: f64, nodes: usize) -> Result<C64> {
    if !(lambda_cut > 0.0 && lambda_cut.is_finite()) {
        return Err(Error::InvalidParams(format!("cut-off {lambda_cut}")));
    }
    let total = 2.0 * completeness_integral(params, z, w, 0.0, lambda_cut, nodes)?;
    let edge = completeness_integrand(params, z, w, lambda_cut)?.norm();
    if !(edge <= 1e-3 * total.norm()) {
        return Err(Error::Truncation(format!(
            "integrand {edge:e} at lambda = {lambda_cut} against total {:e}",
            total.norm()
        )));
    }
    Ok(total)
}

/// The target `e^{i pi s} (z - conj w)^{-2s}`.
pub fn completeness_target(params: &SpinParams, z: HPoint, w: HPoint) -> C64 {
    repro_kernel(params.s, z.z(), w.z())
}

/// Exponential growth rate of `|Psi_l(z)|` in `l`: `|Im zeta|` with
/// `z = i beta cosh(zeta)`, `Re zeta >= 0`. Below `i beta` on the imaginary
/// axis this equals `pi + Im xi` of the companion form `z = -i beta cosh(xi)`.
pub fn growth_rate(params: &SpinParams, z: HPoint) -> f64 {
    let u = z.z() / C64::new(0.0, params.beta);
    u.acosh().im.abs()
}

/// Predicted decay rate `delta = pi - rate(z) - rate(w)` of the completeness
/// integrand (the measure decays like `e^{-pi l}`).
pub fn predicted_delta(params: &SpinParams, z: HPoint, w: HPoint) -> f64 {
    PI - growth_rate(params, z) - growth_rate(params, w)
}

/// Fit of `|integrand| ~ C l^{2s-1} e^{-delta l}` over a `l` window.
#[derive(Debug, Clone, Copy)]
pub struct DecayCertificate {
    pub amplitude: f64,
    pub delta: f64,
    /// Largest relative deviation `|fit/actual - 1|` over the samples.
    pub residual: f64,
}

/// Least-squares fit of `ln|integrand| - (2s-1) ln l` against `l` on
/// `samples` equispaced points in `[lo, hi]`.
pub fn decay_certificate(
    params: &SpinParams,
    z: HPoint,
    w: HPoint,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<DecayCertificate> {
    if samples < 3 || !(hi > lo && lo > 0.0) {
        return Err(Error::InvalidParams("decay fit needs a positive window and >= 3 samples".into()));
    }
    let k = 2.0 * params.s - 1.0;
    let mut pts = Vec::with_capacity(samples);
    for j in 0..samples {
        let l = lo + (hi - lo) * j as f64 / (samples - 1) as f64;
        let v = completeness_integrand(params, z, w, l)?.norm();
        if !(v > 0.0) {
            return Err(Error::Convergence(format!("integrand vanished at lambda = {l}")));
        }
        pts.push((l, v.ln() - k * l.ln()));
    }
    let n = samples as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let residual = pts.iter().map(|&(l, y)| ((icpt + slope * l - y).exp() - 1.0).abs()).fold(0.0, f64::max);
    Ok(DecayCertificate { amplitude: icpt.exp(), delta: -slope, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(re: f64, im: f64) -> HPoint {
        HPoint::new(C64::new(re, im)).unwrap()
    }

    #[test]
    fn diagonal_point() {
        let p = SpinParams::standard();
        let z = hp(0.0, 2.0);
        let t = completeness_target(&p, z, z);
        assert!((t - 1.0 / 16.0).norm() < 1e-15);
        let v = completeness_kernel(&p, z, z, 40.0, 640).unwrap();
        assert!((v - t).norm() < 1e-4, "{v} {t}");
    }

    #[test]
    fn off_diagonal_point() {
        let p = SpinParams::standard();
        let (z, w) = (hp(0.0, 2.0), hp(1.0, 2.0));
        let v = completeness_kernel(&p, z, w, 40.0, 640).unwrap();
        let t = completeness_target(&p, z, w);
        assert!((v - t).norm() < 1e-4, "{v} {t}");
    }

    #[test]
    fn below_the_branch_height() {
        let p = SpinParams::standard();
        let (z, w) = (hp(0.3, 0.5), hp(0.0, 2.0));
        let v = completeness_kernel(&p, z, w, 40.0, 640).unwrap();
        let t = completeness_target(&p, z, w);
        assert!((v - t).norm() < 1e-3, "{v} {t}");
    }

    #[test]
    fn even_integrand() {
        let p = SpinParams::new(1.2, 0.7, 1.0).unwrap();
        let (z, w) = (hp(0.3, 1.5), hp(-0.4, 2.5));
        let half = 2.0 * completeness_integral(&p, z, w, 0.0, 12.0, 192).unwrap();
        let full = completeness_integral(&p, z, w, -12.0, 12.0, 384).unwrap();
        assert!((half - full).norm() <= 1e-12 * full.norm().max(1.0));
    }

    #[test]
    fn short_cut_is_reported() {
        let p = SpinParams::standard();
        let z = hp(0.0, 2.0);
        assert!(matches!(completeness_kernel(&p, z, z, 2.0, 64), Err(Error::Truncation(_))));
    }

    #[test]
    fn decay_matches_prediction() {
        let p = SpinParams::standard();
        let (z, w) = (hp(1.0, 2.0), hp(-0.5, 1.5));
        let cert = decay_certificate(&p, z, w, 10.0, 40.0, 16).unwrap();
        assert!(cert.delta > 0.0);
        assert!(cert.residual <= 0.05, "{cert:?}");
        assert!((cert.delta - predicted_delta(&p, z, w)).abs() < 0.05, "{cert:?}");
    }
}
