//! The three intertwining relations of the reflection operator, checked
//! pointwise on polynomial inputs.

use super::diffop::DiffOp;
use super::generators::{hamiltonian, i_operator, n_operator};
use super::poly::{Poly, DEFAULT_CAP};
use crate::error::Result;
use crate::halfplane::{AnalyticFn, HPoint};
use crate::reflection::{reflect_v2, ReflectParams};
use crate::{SpinParams, C64};

fn as_fn(p: &Poly) -> AnalyticFn {
    AnalyticFn::polynomial(p.coeffs().to_vec())
}

/// `max_z |K (A p)(z) - (B K p)(z)|`: the left side applies `A` exactly and
/// then the reflection operator, the right side differentiates `K p` under
/// the integral sign and applies `B`.
fn relation_residual(rp: &ReflectParams, a: &DiffOp, b: &DiffOp, p: &Poly, zgrid: &[HPoint]) -> Result<f64> {
    let ap = as_fn(&a.apply_capped(p, DEFAULT_CAP)?);
    let pf = as_fn(p);
    let mut worst: f64 = 0.0;
    for &z in zgrid {
        let lhs = reflect_v2(rp, &ap, z, 0)?;
        let mut derivs = Vec::with_capacity(b.order() + 1);
        for k in 0..=b.order() {
            derivs.push(reflect_v2(rp, &pf, z, k)?);
        }
        let rhs = b.apply_at(z.z(), &derivs).expect("derivatives up to the operator order");
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Residuals of `K N = N K`, `K H^x = H^s K` and `K I^{x,s} = I^{s,x} K`.
pub fn check_intertwining(params: &SpinParams, x: C64, p: &Poly, zgrid: &[HPoint]) -> Result<[f64; 3]> {
    p.ensure_cap(DEFAULT_CAP)?;
    let rp = ReflectParams::new(*params, x)?;
    let s = C64::new(params.s, 0.0);
    let (alpha, beta) = (params.alpha, params.beta);
    let n = n_operator(s, x, beta);
    let r1 = relation_residual(&rp, &n, &n, p, zgrid)?;
    let r2 = relation_residual(&rp, &hamiltonian(x, alpha, beta), &hamiltonian(s, alpha, beta), p, zgrid)?;
    let r3 = relation_residual(&rp, &i_operator(x, s, alpha, beta), &i_operator(s, x, alpha, beta), p, zgrid)?;
    Ok([r1, r2, r3])
}
