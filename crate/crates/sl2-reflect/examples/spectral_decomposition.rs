//! Eigenfunctions of the open-chain Hamiltonian, the spectral measure,
//! completeness of the eigenfunctions and the transform to the half-line.

use sl2_reflect::halfplane::{HPoint, HQuadGrid};
use sl2_reflect::spectral::{
    completeness_kernel, completeness_target, eigen_residual, scattered_points, transform_u, Eigenfunction,
    SpectralMeasure, SpectralSample,
};
use sl2_reflect::specfun::hyp2f1;
use sl2_reflect::{c64, Result, SpinParams};

fn main() -> Result<()> {
    let p = SpinParams::new(1.0, 1.0, 1.0)?;
    let m = SpectralMeasure::new(p);

    // H psi = -lambda^2 psi at scattered points
    let points = scattered_points(6, 3.0, 3.0, 7);
    for lambda in [0.3, 1.5] {
        let e = Eigenfunction::new(p, lambda)?;
        let worst = points.iter().try_fold(0.0f64, |acc, &z| Ok::<_, sl2_reflect::Error>(acc.max(eigen_residual(&e, z)?)))?;
        println!("lambda={lambda}: mu={:.6e}, max eigen residual {worst:.1e}", m.mu(lambda));
    }

    // a small table of samples, written as CSV
    let sample = SpectralSample::tabulate(&p, &[0.5, 1.0], &[HPoint::new(c64(0.0, 2.0))?, HPoint::new(c64(0.5, 1.0))?])?;
    sample.write_csv(std::io::stdout().lock())?;

    // int dlambda mu(lambda) psi_lambda(z) conj(psi_lambda(w)) is the reproducing kernel
    let (z, w) = (HPoint::new(c64(-0.3, 2.0))?, HPoint::new(c64(0.4, 1.5))?);
    let lhs = completeness_kernel(&p, z, w, 40.0, 640)?;
    println!("completeness: spectral {lhs:.10}, kernel {:.10}", completeness_target(&p, z, w));

    // U maps psi_lambda to the half-line eigenfunction 2F1(s + i lambda, s - i lambda; s + g; -y)
    let e = Eigenfunction::new(p, 0.8)?;
    let grid = HQuadGrid::polar(p.s)?;
    for y in [0.0, 0.5, 2.0] {
        let u = transform_u(e.as_fn(), &p, y, &grid)?;
        let want = hyp2f1(c64(p.s, 0.8), c64(p.s, -0.8), c64(p.s + p.g, 0.0), c64(-y, 0.0))?;
        println!("U psi at y={y}: {u:.10} vs {want:.10}");
    }
    Ok(())
}
