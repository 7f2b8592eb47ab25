//! Gamma function and Gauss hypergeometric function: branch-by-branch
//! evaluation and the Barnes contour integral as an independent check.

use sl2_reflect::specfun::{gamma, hyp2f1, hyp2f1_barnes, hyp2f1_method, log_gamma, ContourSpec, Hyp2F1Args, Method};
use sl2_reflect::{c64, Result};

fn main() -> Result<()> {
    println!("Gamma(1/2)^2    = {:.15}", gamma(c64(0.5, 0.0)).re.powi(2));
    println!("|Gamma(1+i)|^2  = {:.15}  (pi/sinh pi = {:.15})", gamma(c64(1.0, 1.0)).norm_sqr(), std::f64::consts::PI / std::f64::consts::PI.sinh());
    println!("log Gamma(10)   = {:.12}  (ln 9! = {:.12})", log_gamma(c64(10.0, 0.0))?.re, 362880f64.ln());

    // 2F1(1, 1; 2; w) = -ln(1 - w) / w, across the unit disc and beyond
    let one = c64(1.0, 0.0);
    for w in [c64(0.3, 0.0), c64(-0.9, 0.4), c64(0.95, 0.2), c64(-3.0, 0.0), c64(2.0, 1.0)] {
        let got = hyp2f1(one, one, c64(2.0, 0.0), w)?;
        let want = -(1.0 - w).ln() / w;
        println!("2F1(1,1;2;{w:.2}) = {got:.12}  error {:.1e}", (got - want).norm());
    }

    // the same value through several evaluation routes
    let (a, b, cc, w) = (c64(0.7, 0.3), c64(1.2, -0.3), c64(1.9, 0.0), c64(-0.6, 0.2));
    for m in [Method::Series, Method::Pfaff, Method::EulerIntegral, Method::Ode] {
        match hyp2f1_method(a, b, cc, w, m) {
            Ok(v) => println!("{m:?}: {v:.14}"),
            Err(e) => println!("{m:?}: {e}"),
        }
    }
    let args = Hyp2F1Args::new(a, b, cc, w);
    println!("Barnes contour: {:.14}  (direct {:.14})", hyp2f1_barnes(&args, &ContourSpec::auto(&args, 0.35))?, args.eval()?);
    Ok(())
}
