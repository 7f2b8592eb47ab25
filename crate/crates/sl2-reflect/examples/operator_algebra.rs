//! Exact operator identities on polynomials: sl(2) generators, the Casimir,
//! the open-chain Hamiltonian, Yang-Baxter and reflection equations, and
//! exponentiated generators acting as Mobius maps.

use sl2_reflect::algebra::{
    apply_diffop, casimir_value, check_reflection_kmatrix, check_yang_baxter, exp_generator, exp_series, hamiltonian,
    hamiltonian_via_j, DiffOp, GeneratorKind, Generators, Poly, DEFAULT_CAP,
};
use sl2_reflect::{c64, Result, SpinParams};

fn main() -> Result<()> {
    let (s, x) = (c64(1.0, 0.0), c64(0.4, 0.3));
    let j = Generators::pair(s, x);
    println!("sl(2) commutator residual up to degree 8: {:.1e}", j.commutation_residual(8, DEFAULT_CAP)?);
    let cas = &j.casimir() - &DiffOp::scalar(casimir_value(s, x));
    println!("Casimir minus its scalar value: {:.1e}", cas.residual_on_basis(8, DEFAULT_CAP)?);

    // the Hamiltonian built directly and through the generators
    let p = SpinParams::from_alpha(1.0, 1.0, 0.7)?;
    let h = hamiltonian(s, 0.7, p.beta);
    let hj = hamiltonian_via_j(s, x, 0.7, p.beta);
    println!("H - H(J) on the basis: {:.1e}", (&h - &hj).residual_on_basis(8, DEFAULT_CAP)?);
    let quad = Poly::new(vec![c64(1.0, 0.0), c64(0.0, -0.5), c64(0.25, 0.0)]);
    let hq: Vec<String> = apply_diffop(&h, &quad)?.coeffs().iter().map(|c| format!("{c}")).collect();
    println!("H (1 - i z/2 + z^2/4) has coefficients [{}]", hq.join(", "));

    for (u, v) in [(c64(0.3, 0.0), c64(-0.7, 0.0)), (c64(0.2, 0.3), c64(-0.5, 0.1))] {
        println!(
            "u={u} v={v}: Yang-Baxter {:.1e}, reflection equation {:.1e}",
            check_yang_baxter(u, v, &p, 6)?,
            check_reflection_kmatrix(u, v, &p)
        );
    }

    // exp(lambda J+) is a Mobius map; compare with its Taylor series
    let z = c64(0.4, 0.7);
    let f = Poly::z_pow(2);
    let closed = exp_generator(GeneratorKind::Jplus, c64(0.05, 0.0), s, c64(1.0, 0.0)).apply(|w| f.eval(w), z)?;
    let series = exp_series(GeneratorKind::Jplus, c64(0.05, 0.0), s, c64(1.0, 0.0), &f, z, 12)?;
    println!("exp(0.05 J+) z^2 at {z}: closed {closed:.12}, series {series:.12}");
    Ok(())
}
