//! Operator-valued matrices: Lax, R and K matrices and their equations.

use super::diffop::DiffOp;
use super::generators::{hamiltonian, Generators};
use super::poly::{Poly, DEFAULT_CAP};
use crate::error::Result;
use crate::{SpinParams, C64, I};

/// Square matrix of differential operators. Scalar matrices enter only
/// through [`OpMatrix::from_scalar`].
#[derive(Debug, Clone, PartialEq)]
pub struct OpMatrix {
    n: usize,
    entries: Vec<DiffOp>,
}

impl OpMatrix {
    pub fn new(n: usize, entries: Vec<DiffOp>) -> Self {
        assert_eq!(entries.len(), n * n, "OpMatrix needs n^2 entries");
        OpMatrix { n, entries }
    }

    pub fn from_scalar(n: usize, m: &[C64]) -> Self {
        Self::new(n, m.iter().map(|&c| DiffOp::scalar(c)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            e[i * n + i] = C64::new(1.0, 0.0);
        }
        Self::from_scalar(n, &e)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &DiffOp {
        &self.entries[i * self.n + j]
    }

    /// Matrix product with entries composed as operators.
    pub fn mul(&self, rhs: &OpMatrix) -> OpMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = DiffOp::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &a.compose(b);
                    }
                }
                out.push(acc);
            }
        }
        OpMatrix::new(n, out)
    }

    pub fn sub(&self, rhs: &OpMatrix) -> OpMatrix {
        OpMatrix::new(self.n, self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }

    /// `self ⊗ 1` on `C^2 ⊗ C^2`.
    pub fn kron_left(&self) -> OpMatrix {
        assert_eq!(self.n, 2);
        let mut out = vec![DiffOp::zero(); 16];
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..2 {
                    out[(2 * i + a) * 4 + 2 * j + a] = self.get(i, j).clone();
                }
            }
        }
        OpMatrix::new(4, out)
    }

    /// `1 ⊗ self` on `C^2 ⊗ C^2`.
    pub fn kron_right(&self) -> OpMatrix {
        assert_eq!(self.n, 2);
        let mut out = vec![DiffOp::zero(); 16];
        for i in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    out[(2 * i + a) * 4 + 2 * i + b] = self.get(a, b).clone();
                }
            }
        }
        OpMatrix::new(4, out)
    }

    /// Largest coefficient of any entry applied to `z^0 .. z^deg`.
    pub fn residual_on_basis(&self, deg: usize, cap: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for e in &self.entries {
            worst = worst.max(e.residual_on_basis(deg, cap)?);
        }
        Ok(worst)
    }
}

/// `L(u) = [[u + S, S_-], [S_+, u - S]]` with spin-`s` generators.
pub fn lax(u: C64, s: C64) -> OpMatrix {
    let g = Generators::spin(s);
    let uu = DiffOp::scalar(u);
    OpMatrix::new(2, vec![&uu + &g.h, g.minus, g.plus, &uu - &g.h])
}

/// `L(u1, u2)` as the triangular product `[[1,0],[z,1]] [[u1,-d],[0,u2]] [[1,0],[-z,1]]`.
pub fn lax_factorized(u1: C64, u2: C64) -> OpMatrix {
    let one = DiffOp::identity();
    let zero = DiffOp::zero();
    let z = DiffOp::mul_by(Poly::z());
    let left = OpMatrix::new(2, vec![one.clone(), zero.clone(), z.clone(), one.clone()]);
    let mid = OpMatrix::new(2, vec![DiffOp::scalar(u1), -&DiffOp::d(), zero.clone(), DiffOp::scalar(u2)]);
    let right = OpMatrix::new(2, vec![one.clone(), zero, -&z, one]);
    left.mul(&mid).mul(&right)
}

/// `L(u1, u2)` in expanded form.
pub fn lax_expanded(u1: C64, u2: C64) -> OpMatrix {
    let z = Poly::z();
    let one = C64::new(1.0, 0.0);
    OpMatrix::new(
        2,
        vec![
            DiffOp::new(vec![(Poly::constant(u1 + one), 0), (z.clone(), 1)]),
            -&DiffOp::d(),
            DiffOp::new(vec![(&z * &z, 1), (z.scale(u1 - u2 + one), 0)]),
            DiffOp::new(vec![(Poly::constant(u2), 0), (-&z, 1)]),
        ],
    )
}

/// Yang's R-matrix, row-major.
pub fn r_matrix(u: C64) -> [C64; 16] {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    [
        u + one, o, o, o, //
        o, u, one, o, //
        o, one, u, o, //
        o, o, o, u + one,
    ]
}

/// `K(u) = [[i alpha, u - 1/2], [-beta^2 (u - 1/2), i alpha]]`, row-major.
pub fn k_matrix(u: C64, alpha: f64, beta: f64) -> [C64; 4] {
    let h = u - 0.5;
    [I * alpha, h, -h * beta * beta, I * alpha]
}

fn matmul4(a: &[C64; 16], b: &[C64; 16]) -> [C64; 16] {
    let mut out = [C64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for j in 0..4 {
            out[i * 4 + j] = (0..4).map(|k| a[i * 4 + k] * b[k * 4 + j]).sum();
        }
    }
    out
}

fn kron2_left(k: &[C64; 4]) -> [C64; 16] {
    let mut out = [C64::new(0.0, 0.0); 16];
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..2 {
                out[(2 * i + a) * 4 + 2 * j + a] = k[i * 2 + j];
            }
        }
    }
    out
}

fn kron2_right(k: &[C64; 4]) -> [C64; 16] {
    let mut out = [C64::new(0.0, 0.0); 16];
    for i in 0..2 {
        for a in 0..2 {
            for b in 0..2 {
                out[(2 * i + a) * 4 + 2 * i + b] = k[a * 2 + b];
            }
        }
    }
    out
}

/// Apply both sides of `R(u-v) (L(u)⊗1)(1⊗L(v)) = (1⊗L(v))(L(u)⊗1) R(u-v)`
/// to `z^0 .. z^basis_degree`; the largest coefficient of the difference.
pub fn check_yang_baxter(u: C64, v: C64, params: &SpinParams, basis_degree: usize) -> Result<f64> {
    let cap = DEFAULT_CAP;
    if basis_degree + 2 > cap {
        return Err(crate::Error::DegreeCap { degree: basis_degree + 2, cap });
    }
    let s = C64::new(params.s, 0.0);
    let r = OpMatrix::from_scalar(4, &r_matrix(u - v));
    let lu = lax(u, s).kron_left();
    let lv = lax(v, s).kron_right();
    let lhs = r.mul(&lu).mul(&lv);
    let rhs = lv.mul(&lu).mul(&r);
    lhs.sub(&rhs).residual_on_basis(basis_degree, cap)
}

/// Largest entry of the difference of the two sides of
/// `R(u-v)(K(u)⊗1)R(u+v-1)(1⊗K(v)) = (1⊗K(v))R(u+v-1)(K(u)⊗1)R(u-v)`.
pub fn check_reflection_kmatrix(u: C64, v: C64, params: &SpinParams) -> f64 {
    kmatrix_residual(u, v, params.alpha, params.beta)
}

/// [`check_reflection_kmatrix`] for raw `(alpha, beta)`, including `beta < 0`.
pub fn kmatrix_residual(u: C64, v: C64, alpha: f64, beta: f64) -> f64 {
    let r1 = r_matrix(u - v);
    let r2 = r_matrix(u + v - 1.0);
    let ku = kron2_left(&k_matrix(u, alpha, beta));
    let kv = kron2_right(&k_matrix(v, alpha, beta));
    let lhs = matmul4(&matmul4(&matmul4(&r1, &ku), &r2), &kv);
    let rhs = matmul4(&matmul4(&matmul4(&kv, &r2), &ku), &r1);
    lhs.iter().zip(&rhs).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
}

/// One-site monodromy `T(u) = L(u) K(u) L(u)`.
pub fn monodromy(u: C64, params: &SpinParams) -> OpMatrix {
    let l = lax(u, C64::new(params.s, 0.0));
    let k = OpMatrix::from_scalar(2, &k_matrix(u, params.alpha, params.beta));
    l.mul(&k).mul(&l)
}

/// Residual of `B(u) = (u - 1/2)(u^2 - H^s)` on `z^0 .. z^deg`.
pub fn check_b_structure(u: C64, params: &SpinParams, deg: usize) -> Result<f64> {
    let t = monodromy(u, params);
    let h = hamiltonian(C64::new(params.s, 0.0), params.alpha, params.beta);
    let expect = (&DiffOp::scalar(u * u) - &h).scale(u - 0.5);
    (t.get(0, 1) - &expect).residual_on_basis(deg, DEFAULT_CAP)
}

/// The two sides' matrix products in the defining equation of the
/// reflection operator, without the operator itself:
/// `P(u) = L(u+x-1, u-s) K(u) L(u+s-1, u-x)` and `P` with `s` and `x` swapped.
pub fn keq_products(u: C64, s: C64, x: C64, params: &SpinParams) -> (OpMatrix, OpMatrix) {
    let k = OpMatrix::from_scalar(2, &k_matrix(u, params.alpha, params.beta));
    let one = C64::new(1.0, 0.0);
    let p = lax_expanded(u + x - one, u - s).mul(&k).mul(&lax_expanded(u + s - one, u - x));
    let q = lax_expanded(u + s - one, u - x).mul(&k).mul(&lax_expanded(u + x - one, u - s));
    (p, q)
}

/// At `u = 1/2` both products must reduce to the same scalar matrix, so the
/// difference is divisible by `u - 1/2` up to `s ↔ x` symmetric constants.
/// Returns the residual of `P(1/2) - Q(1/2)` and of `P(1/2)` being order 0
/// with constant coefficients.
pub fn check_keq_divisibility(s: C64, x: C64, params: &SpinParams, deg: usize) -> Result<(f64, f64)> {
    let (p, q) = keq_products(C64::new(0.5, 0.0), s, x, params);
    let diff = p.sub(&q).residual_on_basis(deg, DEFAULT_CAP)?;
    let mut non_scalar: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for (c, k) in p.get(i, j).terms() {
                let bad = if k == 0 { c.coeffs().iter().skip(1).fold(0.0f64, |m, a| m.max(a.norm())) } else { c.max_abs() };
                non_scalar = non_scalar.max(bad);
            }
        }
    }
    Ok((diff, non_scalar))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn factorized_lax_equals_expanded() {
        let (u1, u2) = (c(0.3, 0.2), c(-1.1, 0.5));
        let d = lax_factorized(u1, u2).sub(&lax_expanded(u1, u2));
        assert!(d.residual_on_basis(10, DEFAULT_CAP).unwrap() < 1e-13);
    }

    #[test]
    fn lax_reparametrisation() {
        let (u, s) = (c(0.7, -0.3), c(1.4, 0.0));
        let one = C64::new(1.0, 0.0);
        let d = lax(u, s).sub(&lax_expanded(u + s - one, u - s));
        assert!(d.residual_on_basis(10, DEFAULT_CAP).unwrap() < 1e-13);
    }

    #[test]
    fn yang_baxter_sample() {
        let p = SpinParams::standard();
        let r = check_yang_baxter(c(0.3, 0.0), c(-0.7, 0.0), &p, 5).unwrap();
        assert!(r <= 1e-12, "{r}");
    }

    #[test]
    fn kmatrix_reflection_sample() {
        let p = SpinParams::from_alpha(1.0, 1.0, 0.7).unwrap();
        assert!(check_reflection_kmatrix(c(0.4, 0.0), c(1.1, 0.0), &p) <= 1e-13);
    }

    #[test]
    fn b_entry_is_hamiltonian() {
        let p = SpinParams::from_alpha(1.2, 0.8, 0.3).unwrap();
        for u in [c(0.0, 0.0), c(0.3, 0.4), c(2.0, -1.0)] {
            assert!(check_b_structure(u, &p, 8).unwrap() < 1e-12);
        }
    }

    #[test]
    fn keq_is_divisible_at_half() {
        let p = SpinParams::from_alpha(1.0, 1.0, 0.7).unwrap();
        let (d, ns) = check_keq_divisibility(c(1.0, 0.0), c(0.4, 0.3), &p, 8).unwrap();
        assert!(d < 1e-12 && ns < 1e-12, "{d} {ns}");
    }
}
