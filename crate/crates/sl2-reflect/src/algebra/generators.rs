//! Spin generators and the operators built from them.

use super::diffop::DiffOp;
use super::poly::Poly;
use crate::{C64, I};

/// `(h, minus, plus)` realising `h = z d + j`, `minus = -d`,
/// `plus = z^2 d + 2 j z` for spin `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generators {
    pub h: DiffOp,
    pub minus: DiffOp,
    pub plus: DiffOp,
}

impl Generators {
    pub fn spin(j: C64) -> Self {
        let z = Poly::z();
        Generators {
            h: DiffOp::new(vec![(z.clone(), 1), (Poly::constant(j), 0)]),
            minus: DiffOp::new(vec![(Poly::constant(-C64::new(1.0, 0.0)), 1)]),
            plus: DiffOp::new(vec![(&z * &z, 1), (z.scale(2.0 * j), 0)]),
        }
    }

    /// Generators `J` of spin `(s + x)/2`.
    pub fn pair(s: C64, x: C64) -> Self {
        Self::spin(0.5 * (s + x))
    }

    /// Residuals of `[plus, minus] = 2h` and `[h, plus/minus] = ±plus/minus`
    /// on `z^0 .. z^deg`.
    pub fn commutation_residual(&self, deg: usize, cap: usize) -> crate::Result<f64> {
        let two = C64::new(2.0, 0.0);
        let r1 = &self.plus.commutator(&self.minus) - &self.h.scale(two);
        let r2 = &self.h.commutator(&self.plus) - &self.plus;
        let r3 = &self.h.commutator(&self.minus) + &self.minus;
        let mut worst: f64 = 0.0;
        for r in [r1, r2, r3] {
            worst = worst.max(r.residual_on_basis(deg, cap)?);
        }
        Ok(worst)
    }

    /// `2h^2 + plus minus + minus plus`.
    pub fn casimir(&self) -> DiffOp {
        let hh = self.h.compose(&self.h).scale(C64::new(2.0, 0.0));
        &(&hh + &self.plus.compose(&self.minus)) + &self.minus.compose(&self.plus)
    }
}

/// Casimir eigenvalue `(s + x)(s + x - 2)/2`.
pub fn casimir_value(s: C64, x: C64) -> C64 {
    let t = s + x;
    t * (t - 2.0) / 2.0
}

/// `H^s = (z^2 + beta^2) d^2 + (2s + 1) z d + 2i alpha d + s^2`.
pub fn hamiltonian(s: C64, alpha: f64, beta: f64) -> DiffOp {
    let z = Poly::z();
    let b2 = Poly::constant(C64::new(beta * beta, 0.0));
    DiffOp::new(vec![
        (&(&z * &z) + &b2, 2),
        (z.scale(2.0 * s + 1.0), 1),
        (Poly::constant(2.0 * I * alpha), 1),
        (Poly::constant(s * s), 0),
    ])
}

/// `H^s` written through the spin-`(s + x)/2` generators:
/// `(J + (s - x)/2)^2 + beta^2 J_-^2 - 2i alpha J_-`.
pub fn hamiltonian_via_j(s: C64, x: C64, alpha: f64, beta: f64) -> DiffOp {
    let j = Generators::pair(s, x);
    let shifted = &j.h + &DiffOp::scalar(0.5 * (s - x));
    let mm = j.minus.compose(&j.minus).scale(C64::new(beta * beta, 0.0));
    &(&shifted.compose(&shifted) + &mm) - &j.minus.scale(2.0 * I * alpha)
}

/// `N = (J_+ - beta^2 J_-)/(2i beta)`, symmetric in `s` and `x`.
pub fn n_operator(s: C64, x: C64, beta: f64) -> DiffOp {
    let j = Generators::pair(s, x);
    (&j.plus - &j.minus.scale(C64::new(beta * beta, 0.0))).scale(1.0 / (2.0 * I * beta))
}

/// `(N, N_-, N_+)` with `N_± = -J ± (J_+ + beta^2 J_-)/(2i beta)`, packed as
/// generators so the commutation check can be reused.
pub fn n_generators(s: C64, x: C64, beta: f64) -> Generators {
    let j = Generators::pair(s, x);
    let sum = (&j.plus + &j.minus.scale(C64::new(beta * beta, 0.0))).scale(1.0 / (2.0 * I * beta));
    let neg_j = -&j.h;
    Generators { h: n_operator(s, x, beta), minus: &neg_j - &sum, plus: &neg_j + &sum }
}

/// `I^{s,x} = J J_+ - beta^2 J_- J + (s - x)/2 (J_+ + beta^2 J_-) + 2i alpha J`.
pub fn i_operator(s: C64, x: C64, alpha: f64, beta: f64) -> DiffOp {
    let j = Generators::pair(s, x);
    let b2 = C64::new(beta * beta, 0.0);
    let sum = &j.plus + &j.minus.scale(b2);
    let mut op = &j.h.compose(&j.plus) - &j.minus.compose(&j.h).scale(b2);
    op = &op + &sum.scale(0.5 * (s - x));
    &op + &j.h.scale(2.0 * I * alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::DEFAULT_CAP;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn casimir_is_scalar() {
        let (s, x) = (c(1.0, 0.0), c(0.5, 0.2));
        let op = &Generators::pair(s, x).casimir() - &DiffOp::scalar(casimir_value(s, x));
        assert!(op.residual_on_basis(10, DEFAULT_CAP).unwrap() < 1e-13);
    }

    #[test]
    fn hamiltonian_forms_agree() {
        let s = c(1.3, 0.0);
        for x in [c(0.4, 0.0), c(0.0, 2.5)] {
            let d = &hamiltonian(s, 0.7, 1.4) - &hamiltonian_via_j(s, x, 0.7, 1.4);
            assert!(d.residual_on_basis(10, DEFAULT_CAP).unwrap() < 1e-12);
        }
    }

    #[test]
    fn n_triple_commutes_like_spin() {
        let g = n_generators(c(1.0, 0.0), c(0.3, 0.1), 1.2);
        assert!(g.commutation_residual(10, DEFAULT_CAP).unwrap() < 1e-13);
    }
}
