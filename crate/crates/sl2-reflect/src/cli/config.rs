//! Run configuration: model parameters, tolerances, grid settings, the
//! lambda grid and the seed for sampled points.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfplane::{HQuadGrid, Layout};
use crate::SpinParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub s: f64,
    pub g: f64,
    pub beta: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig { s: 1.0, g: 1.0, beta: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Two-dimensional half-plane integrals.
    pub tol_2d: f64,
    /// Nested four-dimensional integrals.
    pub tol_4d: f64,
    /// Exact operator identities.
    pub tol_identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { tol_2d: 1e-8, tol_4d: 1e-5, tol_identity: 1e-12 }
    }
}

/// Polar grid settings for two-dimensional integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub angular_nodes: usize,
    pub radial_panels: usize,
    /// Radial length unit of the grid template, in units of `beta`.
    pub radial_scale: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        let Layout::Polar { angular_nodes, radial_panels, .. } = Layout::polar_default() else { unreachable!() };
        GridConfig { angular_nodes, radial_panels, radial_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub params: ModelConfig,
    pub tolerances: Tolerances,
    pub grids: GridConfig,
    pub lambda_grid: Vec<f64>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            params: ModelConfig::default(),
            tolerances: Tolerances::default(),
            grids: GridConfig::default(),
            lambda_grid: (1..=20).map(|k| 0.25 * k as f64).collect(),
            seed: 7,
        }
    }
}

impl Config {
    /// Parses and validates a JSON config.
    pub fn from_json(text: &str) -> Result<Config> {
        let cfg = Config::parse(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses a JSON config without validating values, so that later
    /// overrides can repair them; missing keys take defaults. The grid keys
    /// `angular_nodes`, `radial_panels`, `radial_scale`, `tol_2d` and
    /// `tol_4d` are also accepted at the top level.
    pub fn parse(text: &str) -> Result<Config> {
        let mut v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config JSON: {e}")))?;
        if let Some(obj) = v.as_object_mut() {
            for (key, section) in [
                ("angular_nodes", "grids"),
                ("radial_panels", "grids"),
                ("radial_scale", "grids"),
                ("tol_2d", "tolerances"),
                ("tol_4d", "tolerances"),
                ("tol_identity", "tolerances"),
            ] {
                if let Some(val) = obj.remove(key) {
                    let sec = obj.entry(section).or_insert_with(|| serde_json::json!({}));
                    sec.as_object_mut()
                        .ok_or_else(|| Error::Config(format!("'{section}' must be an object")))?
                        .insert(key.into(), val);
                }
            }
        }
        serde_json::from_value(v).map_err(|e| Error::Config(format!("config JSON: {e}")))
    }

    /// Reads and validates a config file.
    pub fn load(path: &Path) -> Result<Config> {
        let cfg = Config::read(path)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file without validating values.
    pub fn read(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    /// Model parameters; violations are configuration errors.
    pub fn spin_params(&self) -> Result<SpinParams> {
        let m = self.params;
        SpinParams::new(m.s, m.g, m.beta).map_err(|e| match e {
            Error::InvalidParams(msg) => Error::Config(msg),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.spin_params()?;
        let t = self.tolerances;
        for (name, v) in [("tol_2d", t.tol_2d), ("tol_4d", t.tol_4d), ("tol_identity", t.tol_identity)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} = {v} must be positive")));
            }
        }
        let g = self.grids;
        if g.angular_nodes < 2 || g.radial_panels < 1 {
            return Err(Error::Config(format!(
                "grid needs angular_nodes >= 2 and radial_panels >= 1, got {} and {}",
                g.angular_nodes, g.radial_panels
            )));
        }
        if !(g.radial_scale > 0.0 && g.radial_scale.is_finite()) {
            return Err(Error::Config(format!("radial_scale = {} must be positive", g.radial_scale)));
        }
        if let Some(l) = self.lambda_grid.iter().find(|l| !l.is_finite()) {
            return Err(Error::Config(format!("lambda grid entry {l} is not finite")));
        }
        Ok(())
    }

    /// Two-dimensional grid for spin `s` from the grid settings, placed at
    /// scale `radial_scale * beta`. Built on demand so suites that need no
    /// quadrature build none.
    pub fn grid(&self, s: f64) -> Result<HQuadGrid> {
        let g = self.grids;
        Ok(HQuadGrid::polar_with(s, g.angular_nodes, g.radial_panels)?.placed(0.0, g.radial_scale * self.params.beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_flat_keys() {
        let c = Config::from_json(r#"{"angular_nodes": 24, "tol_4d": 1e-4, "params": {"s": 1.5}}"#).unwrap();
        assert_eq!(c.grids.angular_nodes, 24);
        assert_eq!(c.tolerances.tol_4d, 1e-4);
        assert_eq!(c.params, ModelConfig { s: 1.5, g: 1.0, beta: 1.0 });
        assert_eq!(c.seed, Config::default().seed);
    }

    #[test]
    fn small_spin_is_a_config_error() {
        let e = Config::from_json(r#"{"params": {"s": 0.3}}"#).unwrap_err();
        assert!(matches!(&e, Error::Config(m) if m.contains("s > 1/2")), "{e}");
        assert!(matches!(Config::from_json(r#"{"bogus": 1}"#), Err(Error::Config(_))));
        assert!(matches!(Config::from_json("{"), Err(Error::Config(_))));
    }
}
