//! Mellin–Barnes representation of 2F1 on a horizontal contour.
//!
//! With `t = i rho` the integrand is
//! `Gamma(a + i rho) Gamma(b + i rho) Gamma(-i rho) / Gamma(c + i rho) (-w)^{i rho}`
//! integrated along `rho in R + i offset`, normalised by
//! `Gamma(c) / (2 pi Gamma(a) Gamma(b))`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_ratio, log_gamma_unchecked};
use super::hyp::Hyp2F1Args;
use super::quad::gauss_legendre;
use crate::error::{Error, Result};

/// Integration line `R + i offset`, cut to `[-truncation, truncation]` and
/// integrated with `nodes` Gauss–Legendre points per panel of width 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub offset: f64,
    pub truncation: f64,
    pub nodes: usize,
}

/// Relative size of the neglected tails that triggers [`Error::Tail`].
pub const TAIL_TOL: f64 = 1e-10;

impl ContourSpec {
    /// Truncation from the exponential decay rate `pi - |arg(-w)|`.
    pub fn auto(args: &Hyp2F1Args, offset: f64) -> Self {
        let decay = (PI - (-args.w).arg().abs()).max(1e-3);
        let shift = args.a.im.abs().max(args.b.im.abs()).max(args.c.im.abs());
        let algebraic = (args.a + args.b - args.c).re.abs() + 2.0;
        let truncation = shift + ((1.0 / TAIL_TOL).ln() + 10.0 + algebraic * 4.0) / decay;
        ContourSpec { offset, truncation, nodes: 20 }
    }
}

fn integrand(args: &Hyp2F1Args, log_mw: C64, rho: C64) -> C64 {
    let irho = C64::new(0.0, 1.0) * rho;
    (log_gamma_unchecked(args.a + irho) + log_gamma_unchecked(args.b + irho) + log_gamma_unchecked(-irho)
        - log_gamma_unchecked(args.c + irho)
        + irho * log_mw)
        .exp()
}

fn check_contour(args: &Hyp2F1Args, contour: &ContourSpec) -> Result<()> {
    const GAP: f64 = 1e-6;
    // poles rho = -i n sit at Im rho <= 0
    if contour.offset < GAP {
        return Err(Error::Contour(format!(
            "offset {} does not clear the pole series rho = -i n",
            contour.offset
        )));
    }
    // poles rho = i (a + n) sit at Im rho >= Re a
    for p in [args.a, args.b] {
        if p.re - contour.offset < GAP {
            return Err(Error::Contour(format!(
                "offset {} does not stay below the pole series rho = i({p} + n)",
                contour.offset
            )));
        }
    }
    if (PI - (-args.w).arg().abs()) < 1e-3 {
        return Err(Error::Contour(format!("|arg(-w)| reaches pi at w = {}", args.w)));
    }
    if contour.truncation <= 0.0 || contour.nodes == 0 {
        return Err(Error::Contour("truncation and nodes must be positive".into()));
    }
    Ok(())
}

/// `2F1` from the Barnes integral on the given contour.
pub fn hyp2f1_barnes(args: &Hyp2F1Args, contour: &ContourSpec) -> Result<C64> {
    check_contour(args, contour)?;
    let log_mw = (-args.w).ln();
    let t = contour.truncation;
    let panels = (t).ceil().max(1.0) as usize;
    let width = 2.0 * t / (2 * panels) as f64;
    let rule = gauss_legendre(contour.nodes);
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..2 * panels {
        let lo = -t + width * k as f64;
        for (r, w) in rule.mapped(lo, lo + width) {
            acc += integrand(args, log_mw, C64::new(r, contour.offset)) * w;
        }
    }
    let pref = gamma_ratio(&[args.c], &[args.a, args.b])?;
    let value = pref * acc / (2.0 * PI);
    let decay = PI - (-args.w).arg().abs();
    let tail = [-t, t]
        .iter()
        .map(|&r| integrand(args, log_mw, C64::new(r, contour.offset)).norm())
        .fold(0.0, f64::max)
        * pref.norm()
        / (2.0 * PI * decay);
    if tail > TAIL_TOL * value.norm().max(1e-300) {
        return Err(Error::Tail(format!(
            "tail estimate {tail:e} at truncation {t} exceeds {TAIL_TOL:e} relative"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp::hyp2f1;

    fn psi_args(lambda: f64, z: C64) -> Hyp2F1Args {
        let (s, g, beta) = (1.0, 1.0, 1.0);
        let i = C64::new(0.0, 1.0);
        Hyp2F1Args::new(
            C64::new(s, lambda),
            C64::new(s, -lambda),
            C64::new(s + g, 0.0),
            0.5 + i * z / (2.0 * beta),
        )
    }

    #[test]
    fn reproduces_eigenfunction_value() {
        let args = psi_args(0.8, C64::new(0.0, 3.0));
        let c = ContourSpec::auto(&args, 0.5);
        let b = hyp2f1_barnes(&args, &c).unwrap();
        let h = args.eval().unwrap();
        assert!((b - h).norm() < 1e-8 * h.norm(), "{b} vs {h}");
    }

    #[test]
    fn generic_parameters() {
        let args = Hyp2F1Args::new(C64::new(0.7, 0.2), C64::new(1.3, -0.5), C64::new(2.2, 0.1), C64::new(-2.0, 1.5));
        let c = ContourSpec::auto(&args, 0.35);
        let b = hyp2f1_barnes(&args, &c).unwrap();
        let h = hyp2f1(args.a, args.b, args.c, args.w).unwrap();
        assert!((b - h).norm() < 1e-8 * h.norm(), "{b} vs {h}");
    }

    #[test]
    fn offset_on_pole_is_rejected() {
        let args = psi_args(0.8, C64::new(0.0, 3.0));
        let mut c = ContourSpec::auto(&args, 0.5);
        c.offset = 0.0;
        assert!(matches!(hyp2f1_barnes(&args, &c), Err(Error::Contour(_))));
        c.offset = 1.2;
        assert!(matches!(hyp2f1_barnes(&args, &c), Err(Error::Contour(_))));
    }

    #[test]
    fn short_truncation_reports_tail() {
        let args = psi_args(0.8, C64::new(0.0, 3.0));
        let c = ContourSpec { offset: 0.5, truncation: 3.0, nodes: 20 };
        assert!(matches!(hyp2f1_barnes(&args, &c), Err(Error::Tail(_))));
    }
}
