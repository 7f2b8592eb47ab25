//! Runs every acceptance criterion on the default configuration and prints
//! one PASS/FAIL line per criterion, followed by the failing cases. Exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use sl2_reflect::cli::{criteria, Config};

fn main() -> ExitCode {
    let cfg = Config::default();
    let mut failed = 0;
    for n in 1..=criteria::COUNT {
        let start = Instant::now();
        let cases = criteria::run(n, &cfg);
        let bad: Vec<_> = cases.iter().filter(|c| !c.pass).collect();
        let ok = !cases.is_empty() && bad.is_empty();
        println!(
            "{} criterion {n:>2}: {} ({} cases, {:.1}s)",
            if ok { "PASS" } else { "FAIL" },
            criteria::title(n),
            cases.len(),
            start.elapsed().as_secs_f64()
        );
        for c in bad {
            println!("       {}: residual {:.3e} > tol {:.1e} ({})", c.name, c.residual, c.tolerance, c.reference);
        }
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria::COUNT - failed, criteria::COUNT);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
