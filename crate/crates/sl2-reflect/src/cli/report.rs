//! Verification reports.

use serde::{Deserialize, Serialize};

/// One checked quantity: a residual against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    /// What the case checks, in words.
    pub reference: String,
    pub parameters: serde_json::Value,
    /// Non-finite residuals serialize as `null`.
    #[serde(deserialize_with = "nullable_f64")]
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn nullable_f64<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl Case {
    /// A case passes iff its residual is finite and at most the tolerance.
    pub fn new(name: &str, reference: &str, parameters: serde_json::Value, residual: f64, tolerance: f64) -> Case {
        Case {
            name: name.into(),
            reference: reference.into(),
            parameters,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// An exact check: residual 0 when `ok`, else 1, tolerance 0.
    pub fn exact(name: &str, reference: &str, parameters: serde_json::Value, ok: bool) -> Case {
        Case::new(name, reference, parameters, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    /// A case whose computation failed; it records the error and fails.
    pub fn failed(name: &str, reference: &str, parameters: serde_json::Value, err: &crate::Error) -> Case {
        Case::new(name, &format!("{reference} [error: {err}]"), parameters, f64::NAN, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    /// Seconds.
    pub wall_time: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per case plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!(
                "{} {:<48} residual {:.3e} tol {:.1e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{}: {} cases, {} failed, {:.2}s\n",
            self.suite,
            self.cases.len(),
            failed,
            self.wall_time
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn pass_iff_residual_within_tolerance() {
        assert!(Case::new("a", "", json!({}), 1e-9, 1e-8).pass);
        assert!(Case::new("a", "", json!({}), 1e-8, 1e-8).pass);
        assert!(!Case::new("a", "", json!({}), 2e-8, 1e-8).pass);
        assert!(!Case::new("a", "", json!({}), f64::NAN, 1e-8).pass);
        assert!(Case::exact("a", "", json!({}), true).pass);
        assert!(!Case::exact("a", "", json!({}), false).pass);
    }

    #[test]
    fn json_round_trip() {
        let r = Report {
            suite: "t".into(),
            cases: vec![Case::new("a", "b", json!({"s": 1.0}), 0.5, 1.0)],
            wall_time: 0.1,
        };
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.passed());
    }
}
