//! Two Gamma-function integrals over the real line, in closed form and by
//! quadrature.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::gamma::{gamma, log_gamma};
use crate::specfun::quad::gl_composite;
use crate::C64;

fn require_positive(name: &str, a: C64) -> Result<()> {
    if a.re > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Pole(format!("{name} = {a}: the real line no longer separates the pole series")))
    }
}

/// Symmetric composite Gauss–Legendre over `[-l, l]`.
fn line<F: Fn(f64) -> C64>(f: F, l: f64) -> C64 {
    let panels = (2.0 * l).ceil() as usize;
    gl_composite(-l, l, panels, 16, f)
}

/// `int_R Gamma(a + i l) Gamma(b - i l) z^{i l} dl = 2 pi Gamma(a + b) z^b / (1 + z)^{a+b}`
/// on principal branches, `|arg z| < pi`.
pub fn gamma_integral_i1(a: C64, b: C64, z: C64) -> Result<C64> {
    require_positive("Re a", a)?;
    require_positive("Re b", b)?;
    if z.re <= 0.0 && z.im == 0.0 {
        return Err(Error::BranchCut(format!("z = {z} on the cut of z^b")));
    }
    let lz = z.ln();
    let l1z = (1.0 + z).ln();
    Ok(2.0 * PI * (log_gamma(a + b)? + b * lz - (a + b) * l1z).exp())
}

/// [`gamma_integral_i1`] by quadrature on `[-l, l]`.
pub fn gamma_integral_i1_quadrature(a: C64, b: C64, z: C64, l: f64) -> Result<C64> {
    require_positive("Re a", a)?;
    require_positive("Re b", b)?;
    let lz = z.ln();
    Ok(line(
        |t| {
            let it = C64::new(0.0, t);
            (log_gamma(a + it).unwrap() + log_gamma(b - it).unwrap() + it * lz).exp()
        },
        l,
    ))
}

/// `int_R prod_j Gamma(a_j ± i l) / Gamma(±2 i l) dl = 4 pi Gamma(a1 + a2) Gamma(a1 + a3) Gamma(a2 + a3)`.
pub fn dbw_integral(a1: C64, a2: C64, a3: C64) -> Result<C64> {
    for (k, a) in [a1, a2, a3].into_iter().enumerate() {
        require_positive(&format!("Re a{}", k + 1), a)?;
    }
    // canonical order keeps the value bit-identical under permutations
    let mut g = [gamma(a1 + a2), gamma(a1 + a3), gamma(a2 + a3)];
    g.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(4.0 * PI * g[0] * g[1] * g[2])
}

/// [`dbw_integral`] by quadrature on `[-l, l]`, using
/// `1/(Gamma(2 i l) Gamma(-2 i l)) = 2 l sinh(2 pi l) / pi`.
pub fn dbw_integral_quadrature(a1: C64, a2: C64, a3: C64, l: f64) -> Result<C64> {
    for (k, a) in [a1, a2, a3].into_iter().enumerate() {
        require_positive(&format!("Re a{}", k + 1), a)?;
    }
    Ok(line(
        |t| {
            if t == 0.0 {
                return C64::new(0.0, 0.0);
            }
            let it = C64::new(0.0, t);
            let mut lg = C64::new((2.0 * t * (2.0 * PI * t).sinh() / PI).abs().ln(), 0.0);
            for a in [a1, a2, a3] {
                lg += log_gamma(a + it).unwrap() + log_gamma(a - it).unwrap();
            }
            lg.exp()
        },
        l,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn i1_anchor() {
        let v = gamma_integral_i1(c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v - PI).norm() < 1e-14);
    }

    #[test]
    fn i1_quadrature() {
        let (a, b, z) = (c(1.0, 0.0), c(0.7, 0.0), c(0.5, 0.2));
        let closed = gamma_integral_i1(a, b, z).unwrap();
        let num = gamma_integral_i1_quadrature(a, b, z, 40.0).unwrap();
        assert!((closed - num).norm() < 1e-8, "{closed} {num}");
        let (a, b, z) = (c(0.6, 0.3), c(1.4, -0.2), c(2.0, -1.5));
        let closed = gamma_integral_i1(a, b, z).unwrap();
        let num = gamma_integral_i1_quadrature(a, b, z, 50.0).unwrap();
        assert!((closed - num).norm() < 1e-8, "{closed} {num}");
    }

    #[test]
    fn i1_swap_symmetry() {
        let (a, b, z) = (c(1.0, 0.3), c(0.7, 0.0), c(0.5, 0.2));
        let l = gamma_integral_i1(a, b, z).unwrap();
        let r = gamma_integral_i1(b, a, 1.0 / z).unwrap();
        assert!((l - r).norm() < 1e-10 * l.norm());
    }

    #[test]
    fn i1_needs_separated_poles() {
        assert!(matches!(gamma_integral_i1(c(-0.2, 0.0), c(1.0, 0.0), c(1.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn dbw_anchor_and_symmetry() {
        let h = c(0.5, 0.0);
        assert!((dbw_integral(h, h, h).unwrap() - 4.0 * PI).norm() < 1e-13);
        let (a, b, d) = (c(1.0, 0.0), c(0.5, 0.1), c(0.7, 0.0));
        let v = dbw_integral(a, b, d).unwrap();
        assert_eq!(v, dbw_integral(b, a, d).unwrap());
        assert_eq!(dbw_integral(a, d, b).unwrap(), dbw_integral(d, a, b).unwrap());
    }

    #[test]
    fn dbw_quadrature() {
        let (a, b, d) = (c(1.0, 0.0), c(0.5, 0.0), c(0.7, 0.0));
        let closed = dbw_integral(a, b, d).unwrap();
        let num = dbw_integral_quadrature(a, b, d, 40.0).unwrap();
        assert!((closed - num).norm() < 1e-7, "{closed} {num}");
    }
}
