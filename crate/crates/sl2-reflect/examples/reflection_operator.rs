//! The reflection operator K(s, x) in its single-integral and contour
//! representations, and the eigenfunctions it produces from the constant.
//! Pass `--double` to add the nested half-plane representation (slow).

use sl2_reflect::halfplane::{AnalyticFn, HPoint};
use sl2_reflect::reflection::{eigenfunction_via_reflection, reflect_v1, reflect_v2, reflect_v3, v3_grid, ReflectParams};
use sl2_reflect::spectral::psi;
use sl2_reflect::{c64, Result, SpinParams};

fn main() -> Result<()> {
    let p = SpinParams::new(1.0, 1.0, 1.0)?;
    let rp = ReflectParams::new(p, c64(0.3, 0.0))?;
    let f = AnalyticFn::power(c64(0.0, 1.0), c64(2.0, 0.0));
    for z in [c64(0.0, 2.0), c64(0.5, 0.7), c64(-1.0, 0.3)] {
        let z = HPoint::new(z)?;
        let v1 = reflect_v1(&rp, &f, z)?;
        let v2 = reflect_v2(&rp, &f, z, 0)?;
        println!("K f at {}: single {v1:.12}, contour {v2:.12}, |diff| {:.1e}", z.z(), (v1 - v2).norm());
        if std::env::args().any(|a| a == "--double") {
            let v3 = reflect_v3(&rp, &f, z, &v3_grid(p.s)?)?;
            println!("    double integral {:.10} (estimated error {:.1e})", v3.value, v3.est_error);
        }
    }

    // K(s, i lambda) applied to 1 is the eigenfunction up to normalisation
    for lambda in [0.5, 1.2] {
        for z in [c64(0.0, 1.0), c64(0.4, 1.1), c64(1.5, 0.7)] {
            let z = HPoint::new(z)?;
            let a = eigenfunction_via_reflection(&p, lambda, z)?;
            let b = psi(&p, lambda, z)?;
            println!("lambda={lambda} z={}: via K {a:.12}, closed form {b:.12}", z.z());
        }
    }
    Ok(())
}
