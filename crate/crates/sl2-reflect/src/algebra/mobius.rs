//! Closed-form actions `psi(z) -> (p z + q)^e psi((a z + b)/(c z + d))`.

use super::diffop::DiffOp;
use super::generators::Generators;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::halfplane::{AnalyticFn, HPoint};
use crate::{SpinParams, C64, I};

const SINGULAR_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusWeight {
    /// `(a, b, c, d)`.
    pub map: [C64; 4],
    pub weight_exponent: C64,
    /// `(p, q)` for the base `p z + q`.
    pub weight_base: (C64, C64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Jplus,
    Jminus,
}

/// `e^{lambda J_±}` for spin `(s + x)/2`:
/// `e^{lambda J_-} psi(z) = psi(z - lambda)`,
/// `e^{lambda J_+} psi(z) = (1 - lambda z)^{-(s+x)} psi(z/(1 - lambda z))`.
pub fn exp_generator(kind: GeneratorKind, lambda: C64, s: C64, x: C64) -> MobiusWeight {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    match kind {
        GeneratorKind::Jminus => MobiusWeight {
            map: [one, -lambda, zero, one],
            weight_exponent: zero,
            weight_base: (zero, one),
        },
        GeneratorKind::Jplus => MobiusWeight {
            map: [one, zero, -lambda, one],
            weight_exponent: -(s + x),
            weight_base: (-lambda, one),
        },
    }
}

impl MobiusWeight {
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        MobiusWeight { map: [one, zero, zero, one], weight_exponent: zero, weight_base: (zero, one) }
    }

    pub fn det(&self) -> C64 {
        let [a, b, c, d] = self.map;
        a * d - b * c
    }

    /// Image of `z` under the map.
    pub fn map_point(&self, z: C64) -> Result<C64> {
        let [a, b, c, d] = self.map;
        let den = c * z + d;
        if den.norm() < SINGULAR_EPS * (1.0 + (c * z).norm()) {
            return Err(Error::SingularMap(format!("{z}")));
        }
        Ok((a * z + b) / den)
    }

    fn weight(&self, z: C64) -> Result<(C64, C64)> {
        let (p, q) = self.weight_base;
        let base = p * z + q;
        if self.weight_exponent == C64::new(0.0, 0.0) {
            return Ok((C64::new(1.0, 0.0), C64::new(0.0, 0.0)));
        }
        if base.norm() < SINGULAR_EPS {
            return Err(Error::SingularMap(format!("weight base vanishes at {z}")));
        }
        let w = base.powc(self.weight_exponent);
        Ok((w, self.weight_exponent * p * w / base))
    }

    /// `(p z + q)^e psi(M z)`.
    pub fn apply<F: Fn(C64) -> C64>(&self, psi: F, z: C64) -> Result<C64> {
        if self.det().norm() < SINGULAR_EPS {
            return Err(Error::SingularMap("ad - bc = 0".into()));
        }
        let m = self.map_point(z)?;
        Ok(self.weight(z)?.0 * psi(m))
    }

    /// Value and first derivative of the image, given `psi` as a jet
    /// `w -> (psi(w), psi'(w))`.
    pub fn apply_jet<F: Fn(C64) -> Result<(C64, C64)>>(&self, psi: F, z: C64) -> Result<(C64, C64)> {
        let det = self.det();
        if det.norm() < SINGULAR_EPS {
            return Err(Error::SingularMap("ad - bc = 0".into()));
        }
        let m = self.map_point(z)?;
        let [_, _, c, d] = self.map;
        let den = c * z + d;
        let dm = det / (den * den);
        let (w, dw) = self.weight(z)?;
        let (f, df) = psi(m)?;
        Ok((w * f, dw * f + w * df * dm))
    }

    /// The action of `self` after `other` (`self ∘ other` as operators), for
    /// automorphic weights `(c z + d)^e` of unit determinant and equal `e`.
    /// Powers are combined on the principal branch.
    pub fn compose(&self, other: &MobiusWeight) -> Result<MobiusWeight> {
        for m in [self, other] {
            let [_, _, c, d] = m.map;
            let automorphic = m.weight_exponent == C64::new(0.0, 0.0) && c == C64::new(0.0, 0.0)
                || m.weight_base == (c, d);
            if !automorphic || (m.det() - 1.0).norm() > 1e-14 {
                return Err(Error::NotApplicable("composition needs automorphic weights".into()));
            }
        }
        let e = if self.weight_exponent == C64::new(0.0, 0.0) { other.weight_exponent } else { self.weight_exponent };
        if other.weight_exponent != C64::new(0.0, 0.0) && other.weight_exponent != e {
            return Err(Error::NotApplicable("weight exponents differ".into()));
        }
        // (A B psi)(z) = w_A(z) w_B(M_A z) psi(M_B M_A z): matrix M_B M_A
        let [a1, b1, c1, d1] = other.map;
        let [a2, b2, c2, d2] = self.map;
        let a = a1 * a2 + b1 * c2;
        let b = a1 * b2 + b1 * d2;
        let c = c1 * a2 + d1 * c2;
        let d = c1 * b2 + d1 * d2;
        Ok(MobiusWeight { map: [a, b, c, d], weight_exponent: e, weight_base: (c, d) })
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |p, k| p * k as f64)
}

/// Truncated series `sum_{n < terms} lambda^n J^n p / n!` evaluated at `z`.
pub fn exp_series(kind: GeneratorKind, lambda: C64, s: C64, x: C64, p: &Poly, z: C64, terms: usize) -> Result<C64> {
    let g = Generators::pair(s, x);
    let op: &DiffOp = match kind {
        GeneratorKind::Jplus => &g.plus,
        GeneratorKind::Jminus => &g.minus,
    };
    let cap = p.degree() + terms;
    let mut cur = p.clone();
    let mut acc = C64::new(0.0, 0.0);
    for n in 0..terms {
        acc += lambda.powu(n as u32) / factorial(n) * cur.eval(z);
        cur = op.apply_capped(&cur, cap)?;
    }
    Ok(acc)
}

/// `|N f(z) - e^{-J_+/(i beta)} e^{(i beta/2) J_-} J e^{-(i beta/2) J_-} e^{J_+/(i beta)} f(z)|`
/// with generators of spin `(s + x)/2`.
pub fn check_n2_identity(params: &SpinParams, x: C64, f: &AnalyticFn, z: HPoint) -> Result<f64> {
    let z = z.z();
    let s = C64::new(params.s, 0.0);
    let beta = params.beta;
    let two_j = s + x;
    let d1 = f.deriv_strict(z, 1)?;
    let lhs = ((z * z + beta * beta) * d1 + two_j * z * f.eval(z)) / (2.0 * I * beta);

    let l1 = -1.0 / (I * beta);
    let l2 = I * beta / 2.0;
    let a_plus = exp_generator(GeneratorKind::Jplus, l1, s, x);
    let a_minus = exp_generator(GeneratorKind::Jminus, l2, s, x);
    let inv_plus = exp_generator(GeneratorKind::Jplus, -l1, s, x);
    let inv_minus = exp_generator(GeneratorKind::Jminus, -l2, s, x);

    let f_jet = |w: C64| -> Result<(C64, C64)> { Ok((f.eval(w), f.deriv_strict(w, 1)?)) };
    // g = e^{-l2 J_-} e^{-l1 J_+} f
    let g_jet = |w: C64| inv_minus.apply_jet(|v| inv_plus.apply_jet(f_jet, v), w);
    // h = J g, only its value is needed further out
    let h = |w: C64| -> Result<C64> {
        let (g, dg) = g_jet(w)?;
        Ok(w * dg + 0.5 * two_j * g)
    };
    let inner = a_minus.map_point(a_plus.map_point(z)?)?;
    let rhs = a_plus.weight(z)?.0 * a_minus.weight(a_plus.map_point(z)?)?.0 * h(inner)?;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn jminus_is_translation() {
        let m = exp_generator(GeneratorKind::Jminus, c(0.3, 0.1), c(1.0, 0.0), c(0.5, 0.0));
        let v = m.apply(|w| w * w, c(1.0, 1.0)).unwrap();
        let w = c(0.7, 0.9);
        assert!((v - w * w).norm() < 1e-15);
    }

    #[test]
    fn jplus_at_zero_is_identity() {
        let m = exp_generator(GeneratorKind::Jplus, c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let z = c(0.2, 0.8);
        assert!((m.apply(|w| w.exp(), z).unwrap() - z.exp()).norm() < 1e-15);
    }

    #[test]
    fn jplus_matches_series() {
        let (s, x) = (c(1.0, 0.0), c(1.0, 0.0));
        let lam = c(0.05, 0.0);
        let m = exp_generator(GeneratorKind::Jplus, lam, s, x);
        let z = c(0.4, 0.7);
        let closed = m.apply(|w| w * w, z).unwrap();
        let series = exp_series(GeneratorKind::Jplus, lam, s, x, &Poly::z_pow(2), z, 12).unwrap();
        assert!((closed - series).norm() < 1e-10, "{closed} {series}");
    }

    #[test]
    fn singular_point_is_reported() {
        let m = exp_generator(GeneratorKind::Jplus, c(0.5, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert!(matches!(m.apply(|w| w, c(2.0, 0.0)), Err(Error::SingularMap(_))));
    }

    #[test]
    fn composition_agrees_with_sequential_action() {
        let (s, x) = (c(1.0, 0.0), c(0.5, 0.0));
        let a = exp_generator(GeneratorKind::Jplus, c(0.1, 0.05), s, x);
        let b = exp_generator(GeneratorKind::Jminus, c(-0.2, 0.1), s, x);
        let ab = a.compose(&b).unwrap();
        let z = c(0.3, 0.6);
        let psi = |w: C64| w * w + 1.0;
        let seq = a.apply(|w| b.apply(psi, w).unwrap(), z).unwrap();
        assert!((ab.apply(psi, z).unwrap() - seq).norm() < 1e-13);
    }

    #[test]
    fn n2_identity_holds() {
        let p = SpinParams::from_alpha(1.0, 1.0, 0.0).unwrap();
        let x = c(0.5, 0.0);
        let z = HPoint::new(c(0.0, 1.0)).unwrap();
        let one = AnalyticFn::constant(c(1.0, 0.0));
        assert!(check_n2_identity(&p, x, &one, z).unwrap() < 1e-12);
        let id = AnalyticFn::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let r = check_n2_identity(&p, x, &id, z).unwrap();
        assert!(r < 1e-10, "{r}");
        let r2 = check_n2_identity(&p.scaled(2.0), x, &id, HPoint::new(c(0.0, 2.0)).unwrap()).unwrap();
        assert!(r2 < 1e-10, "{r2}");
    }
}
