//! Verification suites: groups of criteria plus per-module spot checks.

use std::f64::consts::PI;
use std::str::FromStr;
use std::time::Instant;

use serde_json::json;

use super::config::Config;
use super::criteria;
use super::report::{Case, Report};
use crate::error::{Error, Result};
use crate::specfun::{gamma, hyp2f1, hyp2f1_barnes, log_gamma, ContourSpec, Hyp2F1Args};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    Algebra,
    Reflection,
    Spectral,
    Diagrams,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "specfun" => Ok(Suite::Specfun),
            "algebra" => Ok(Suite::Algebra),
            "reflection" => Ok(Suite::Reflection),
            "spectral" => Ok(Suite::Spectral),
            "diagrams" => Ok(Suite::Diagrams),
            "all" => Ok(Suite::All),
            other => Err(Error::Config(format!(
                "unknown suite '{other}'; expected specfun, algebra, reflection, spectral, diagrams or all"
            ))),
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Algebra => "algebra",
            Suite::Reflection => "reflection",
            Suite::Spectral => "spectral",
            Suite::Diagrams => "diagrams",
            Suite::All => "all",
        }
    }

    /// Criteria the suite runs, in order.
    pub fn criteria(self) -> Vec<usize> {
        match self {
            Suite::Specfun => vec![9],
            Suite::Algebra => vec![5, 12],
            Suite::Reflection => vec![2, 3, 4],
            Suite::Spectral => vec![1, 6, 8, 10],
            Suite::Diagrams => vec![7, 11],
            Suite::All => (1..=criteria::COUNT).collect(),
        }
    }

    fn has_special_functions(self) -> bool {
        matches!(self, Suite::Specfun | Suite::All)
    }
}

/// Known values of Gamma and 2F1, and the contour form of 2F1.
pub fn special_function_checks() -> Vec<Case> {
    let c = C64::new;
    let mut out = vec![
        Case::new("Gamma(1/2)", "Gamma(1/2) = sqrt(pi)", json!({}), (gamma(c(0.5, 0.0)) - PI.sqrt()).norm(), 1e-14),
        Case::new(
            "Gamma(1 + i) Gamma(1 - i)",
            "|Gamma(1 + i)|^2 = pi / sinh(pi)",
            json!({}),
            ((gamma(c(1.0, 1.0)) * gamma(c(1.0, -1.0))).re / (PI / PI.sinh()) - 1.0).abs(),
            1e-13,
        ),
    ];
    let lg = log_gamma(c(10.0, 0.0)).map(|v| (v.re - 362_880f64.ln()).abs());
    out.push(match lg {
        Ok(r) => Case::new("log Gamma(10)", "log Gamma(10) = log 9!", json!({}), r, 1e-13),
        Err(e) => Case::failed("log Gamma(10)", "log Gamma(10) = log 9!", json!({}), &e),
    });
    for w in [c(0.5, 0.0), c(-3.0, 0.0), c(0.5, 2.0), c(0.9, 0.1), c(4.0, -3.0)] {
        let name = format!("2F1(1, 1; 2; {w})");
        let reference = "2F1(1, 1; 2; w) = -log(1 - w) / w";
        let want = -(1.0 - w).ln() / w;
        out.push(match hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), w) {
            Ok(v) => Case::new(&name, reference, json!({"w": [w.re, w.im]}), (v - want).norm() / want.norm(), 1e-12),
            Err(e) => Case::failed(&name, reference, json!({"w": [w.re, w.im]}), &e),
        });
    }
    let args = Hyp2F1Args::new(c(0.7, 0.2), c(1.3, -0.5), c(2.2, 0.1), c(-2.0, 1.5));
    let reference = "Mellin-Barnes contour form against the series and connection formulas";
    out.push(match (hyp2f1_barnes(&args, &ContourSpec::auto(&args, 0.35)), args.eval()) {
        (Ok(b), Ok(h)) => Case::new("2F1 contour form", reference, json!({}), (b - h).norm() / h.norm(), 1e-8),
        (Err(e), _) | (_, Err(e)) => Case::failed("2F1 contour form", reference, json!({}), &e),
    });
    out
}

/// Runs a suite. An invalid configuration is an error; failing or erroring
/// cases are recorded in the report.
pub fn run_verify(suite: Suite, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut cases = Vec::new();
    if suite.has_special_functions() {
        cases.extend(special_function_checks());
    }
    for n in suite.criteria() {
        cases.extend(criteria::run(n, cfg).into_iter().map(|mut c| {
            c.name = format!("[{n}] {}", c.name);
            c
        }));
    }
    Ok(Report { suite: suite.name().into(), cases, wall_time: start.elapsed().as_secs_f64() })
}
