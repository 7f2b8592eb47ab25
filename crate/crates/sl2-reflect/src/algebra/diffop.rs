//! Linear differential operators with polynomial coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{Poly, DEFAULT_CAP};
use crate::error::Result;
use crate::C64;

/// `sum_k c_k(z) d^k/dz^k`, stored with `orders[k] = c_k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiffOp {
    orders: Vec<Poly>,
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl DiffOp {
    /// Build from `(coefficient, derivative order)` terms; like orders add up.
    pub fn new(terms: Vec<(Poly, usize)>) -> Self {
        let mut orders: Vec<Poly> = Vec::new();
        for (p, k) in terms {
            if orders.len() <= k {
                orders.resize(k + 1, Poly::zero());
            }
            orders[k] = &orders[k] + &p;
        }
        Self::from_orders(orders)
    }

    fn from_orders(mut orders: Vec<Poly>) -> Self {
        while orders.last().is_some_and(Poly::is_zero) {
            orders.pop();
        }
        DiffOp { orders }
    }

    pub fn zero() -> Self {
        DiffOp::default()
    }

    /// Multiplication by the constant `c`.
    pub fn scalar(c: C64) -> Self {
        Self::new(vec![(Poly::constant(c), 0)])
    }

    pub fn identity() -> Self {
        Self::scalar(C64::new(1.0, 0.0))
    }

    /// Multiplication by the polynomial `p`.
    pub fn mul_by(p: Poly) -> Self {
        Self::new(vec![(p, 0)])
    }

    /// `d/dz`.
    pub fn d() -> Self {
        Self::new(vec![(Poly::one(), 1)])
    }

    /// Non-zero terms as `(coefficient, order)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly, usize)> {
        self.orders.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(k, p)| (p, k))
    }

    pub fn order(&self) -> usize {
        self.orders.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out: Vec<Poly> = vec![Poly::zero(); (self.orders.len() + other.orders.len()).max(1)];
        for (a, i) in self.terms() {
            for (b, j) in other.terms() {
                // a d^i (b d^j) = a sum_m C(i, m) b^{(m)} d^{i - m + j}
                let mut bm = b.clone();
                for m in 0..=i {
                    if bm.is_zero() {
                        break;
                    }
                    let term = (a * &bm).scale(C64::new(binom(i, m), 0.0));
                    let k = i - m + j;
                    out[k] = &out[k] + &term;
                    bm = bm.derivative();
                }
            }
        }
        Self::from_orders(out)
    }

    pub fn scale(&self, c: C64) -> DiffOp {
        Self::from_orders(self.orders.iter().map(|p| p.scale(c)).collect())
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) - &other.compose(self)
    }

    /// `self^n` by repeated composition.
    pub fn pow(&self, n: usize) -> DiffOp {
        (0..n).fold(DiffOp::identity(), |acc, _| acc.compose(self))
    }

    /// Exact image of `p`, rejected if its degree exceeds `cap`.
    pub fn apply_capped(&self, p: &Poly, cap: usize) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut dp = p.clone();
        for (k, c) in self.orders.iter().enumerate() {
            if k > 0 {
                dp = dp.derivative();
            }
            if dp.is_zero() {
                break;
            }
            if !c.is_zero() {
                acc = &acc + &(c * &dp);
            }
        }
        acc.ensure_cap(cap)?;
        Ok(acc)
    }

    /// Pointwise value of `self f` at `z` from the derivative values
    /// `derivs[k] = f^{(k)}(z)`.
    pub fn apply_at(&self, z: C64, derivs: &[C64]) -> Option<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (c, k) in self.terms() {
            acc += c.eval(z) * *derivs.get(k)?;
        }
        Some(acc)
    }

    /// Largest coefficient of the image over the monomials `z^0 .. z^max_deg`.
    pub fn residual_on_basis(&self, max_deg: usize, cap: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for k in 0..=max_deg {
            worst = worst.max(self.apply_capped(&Poly::z_pow(k), cap)?.max_abs());
        }
        Ok(worst)
    }
}

/// [`DiffOp::apply_capped`] with the default cap.
pub fn apply_diffop(op: &DiffOp, p: &Poly) -> Result<Poly> {
    op.apply_capped(p, DEFAULT_CAP)
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.orders.len().max(rhs.orders.len());
        let z = Poly::zero();
        DiffOp::from_orders(
            (0..n)
                .map(|k| self.orders.get(k).unwrap_or(&z) + rhs.orders.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Composition.
impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for DiffOp {
            type Output = DiffOp;
            fn $m(self, rhs: DiffOp) -> DiffOp {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_matches_sequential_application() {
        let z = Poly::z();
        let a = DiffOp::new(vec![(&z * &z, 1), (z.scale(C64::new(2.0, 0.0)), 0)]);
        let b = DiffOp::new(vec![(Poly::one(), 2), (z.clone(), 1)]);
        let p = Poly::new((0..6).map(|k| C64::new(k as f64 + 1.0, -0.5 * k as f64)).collect());
        let seq = a.apply_capped(&b.apply_capped(&p, 20).unwrap(), 20).unwrap();
        let comp = a.compose(&b).apply_capped(&p, 20).unwrap();
        assert!(seq.max_diff(&comp) < 1e-12);
    }

    #[test]
    fn heisenberg_commutator() {
        let c = DiffOp::d().commutator(&DiffOp::mul_by(Poly::z()));
        assert_eq!(c, DiffOp::identity());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let op = DiffOp::mul_by(Poly::z_pow(3));
        assert!(apply_diffop(&op, &Poly::z_pow(10)).is_err());
    }
}
