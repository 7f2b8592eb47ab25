//! The weighted holomorphic space on the upper half-plane: quadrature grids,
//! the reproducing property and scalar products.

use sl2_reflect::halfplane::{repro_kernel, reproduce, scalar_product, AnalyticFn, HPoint, HQuadGrid};
use sl2_reflect::{c64, Result, SpinParams};

fn main() -> Result<()> {
    let p = SpinParams::new(1.0, 1.0, 1.0)?;
    let grid = HQuadGrid::polar(p.s)?;
    println!("polar grid: {} nodes ({} angular x {} radial panels)", grid.len(), grid.angular_nodes(), grid.radial_panels());

    // reproducing property: int Dw K(z, w) psi(w) = psi(z)
    let psi = AnalyticFn::power(c64(0.0, 2.0), c64(3.0, 0.0));
    for z in [c64(0.0, 1.0), c64(0.7, 0.4), c64(-2.0, 3.0)] {
        let got = reproduce(&psi, &p, HPoint::new(z)?, &grid)?;
        println!("reproduce at {z}: {got:.12}  error {:.1e}", (got - psi.eval(z)).norm());
    }

    // the kernel is itself in the space: <K_a, K_b> = K_b(a) = K(a, b)
    let (a, b) = (c64(0.3, 1.2), c64(-0.5, 0.8));
    let ka = AnalyticFn::new(move |w| repro_kernel(1.0, w, a), 2.0);
    let kb = AnalyticFn::new(move |w| repro_kernel(1.0, w, b), 2.0);
    let sp = scalar_product(&ka, &kb, &p, &grid.around(b))?;
    println!("<K_a, K_b> = {sp:.10}  closed form {:.10}", repro_kernel(1.0, a, b));
    Ok(())
}
