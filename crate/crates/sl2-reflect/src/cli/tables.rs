//! CSV tables: a comment line describing the data, a header row, then rows.

use std::io::Write;
use std::str::FromStr;

use super::config::Config;
use crate::error::{Error, Result};
use crate::halfplane::HPoint;
use crate::spectral::{
    completeness_kernel, completeness_target, cutoff_asymptotic, scalar_product_cutoff, Eigenfunction,
    SpectralMeasure, SpectralSample,
};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Mu,
    Psi,
    Completeness,
    Orthogonality,
}

impl FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mu" => Ok(TableKind::Mu),
            "psi" => Ok(TableKind::Psi),
            "completeness" => Ok(TableKind::Completeness),
            "orthogonality" => Ok(TableKind::Orthogonality),
            other => Err(Error::Config(format!(
                "unknown table '{other}'; expected mu, psi, completeness or orthogonality"
            ))),
        }
    }
}

/// Partner spectral parameter and cut-off radius of the orthogonality table.
pub const ORTHOGONALITY_RHO: f64 = 1.3;
pub const ORTHOGONALITY_RADIUS: f64 = 40.0;

/// Spectral cut-off and node count of the completeness table.
pub const COMPLETENESS_CUTOFF: f64 = 40.0;
pub const COMPLETENESS_NODES: usize = 640;

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(out)
}

fn row<W: Write>(w: &mut csv::Writer<W>, fields: &[f64]) -> Result<()> {
    w.write_record(fields.iter().map(|v| v.to_string())).map_err(csv_err)
}

/// Writes the table `what` for the configured model. Lambda-indexed tables
/// (`mu`, `psi`, `orthogonality`) have one row per grid entry and only a
/// header for an empty grid; `completeness` uses a fixed 3 x 3 point grid.
pub fn emit_table<W: Write>(what: TableKind, cfg: &Config, mut out: W) -> Result<()> {
    let p = cfg.spin_params()?;
    let b = p.beta;
    let model = format!("s={} g={} beta={}", p.s, p.g, p.beta);
    match what {
        TableKind::Mu => {
            writeln!(out, "# spectral measure mu(lambda), {model}")?;
            let m = SpectralMeasure::new(p);
            let mut w = writer(out);
            w.write_record(["lambda", "mu"]).map_err(csv_err)?;
            for &l in &cfg.lambda_grid {
                row(&mut w, &[l, m.mu(l)])?;
            }
            w.flush()?;
        }
        TableKind::Psi => {
            writeln!(
                out,
                "# eigenfunctions psi_lambda(z) and the relative residual of H psi + lambda^2 psi, {model}"
            )?;
            let points = [HPoint::new(C64::new(0.0, 2.0 * b))?, HPoint::new(C64::new(0.5 * b, b))?];
            SpectralSample::tabulate(&p, &cfg.lambda_grid, &points)?.write_csv(out)?;
        }
        TableKind::Completeness => {
            writeln!(
                out,
                "# spectral integral of psi_lambda(z) conj psi_lambda(w) against the reproducing kernel, cut-off {}, {model}",
                COMPLETENESS_CUTOFF
            )?;
            let mut w = writer(out);
            w.write_record(["re_z", "im_z", "re_w", "im_w", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err"])
                .map_err(csv_err)?;
            let heights = [1.5, 2.0, 3.0];
            for a in heights {
                for h in heights {
                    let (z, v) = (HPoint::new(C64::new(-0.3 * b, a * b))?, HPoint::new(C64::new(0.4 * b, h * b))?);
                    let lhs = completeness_kernel(&p, z, v, COMPLETENESS_CUTOFF, COMPLETENESS_NODES)?;
                    let rhs = completeness_target(&p, z, v);
                    let (zz, vv) = (z.z(), v.z());
                    row(&mut w, &[zz.re, zz.im, vv.re, vv.im, lhs.re, lhs.im, rhs.re, rhs.im, (lhs - rhs).norm()])?;
                }
            }
            w.flush()?;
        }
        TableKind::Orthogonality => {
            writeln!(
                out,
                "# scalar product of psi_rho and psi_lambda on the disc of radius R against its large-R form, rho={ORTHOGONALITY_RHO} R={ORTHOGONALITY_RADIUS}, {model}"
            )?;
            let mut w = writer(out);
            w.write_record(["lambda", "rho", "radius", "re_cut", "im_cut", "re_asym", "im_asym", "rel_err"])
                .map_err(csv_err)?;
            let (rho, r) = (ORTHOGONALITY_RHO, ORTHOGONALITY_RADIUS);
            let a = Eigenfunction::new(p, rho)?;
            for &l in &cfg.lambda_grid {
                let e = Eigenfunction::new(p, l)?;
                let v = scalar_product_cutoff(a.as_fn(), e.as_fn(), &p, r)?;
                // the large-R form has a pole at lambda = +-rho
                let (asym, err) = match cutoff_asymptotic(&p, l, rho, r) {
                    Ok(x) => (x, (v - x).norm() / x.norm()),
                    Err(Error::Pole(_)) => (C64::new(f64::NAN, f64::NAN), f64::NAN),
                    Err(e) => return Err(e),
                };
                row(&mut w, &[l, rho, r, v.re, v.im, asym.re, asym.im, err])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
