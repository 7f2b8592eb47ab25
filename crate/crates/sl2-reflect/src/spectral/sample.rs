//! Tabulated eigenfunction values over a lambda grid.

use serde::{Deserialize, Serialize};

use super::eigen::{eigen_residual, Eigenfunction};
use super::measure::SpectralMeasure;
use crate::error::{Error, Result};
use crate::halfplane::HPoint;
use crate::{SpinParams, C64};

/// One row: `Psi_lambda(z)`, the measure at `lambda` and the relative
/// residual of the eigenvalue equation at `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub lambda: f64,
    pub mu: f64,
    pub re_z: f64,
    pub im_z: f64,
    pub re_psi: f64,
    pub im_psi: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSample {
    pub params: SpinParams,
    pub rows: Vec<SampleRow>,
}

impl SpectralSample {
    /// Rows for every `(lambda, z)` pair, lambda-major.
    pub fn tabulate(params: &SpinParams, lambdas: &[f64], points: &[HPoint]) -> Result<SpectralSample> {
        let m = SpectralMeasure::new(*params);
        let mut rows = Vec::with_capacity(lambdas.len() * points.len());
        for &lambda in lambdas {
            let e = Eigenfunction::new(*params, lambda)?;
            for &z in points {
                let v: C64 = e.eval(z.z());
                rows.push(SampleRow {
                    lambda,
                    mu: m.mu(lambda),
                    re_z: z.z().re,
                    im_z: z.z().im,
                    re_psi: v.re,
                    im_psi: v.im,
                    residual: eigen_residual(&e, z)?,
                });
            }
        }
        Ok(SpectralSample { params: *params, rows })
    }

    /// CSV with a header row.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(["lambda", "mu", "re_z", "im_z", "re_psi", "im_psi", "residual"]).map_err(csv_err)?;
        for r in &self.rows {
            w.serialize(r).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_and_csv() {
        let p = SpinParams::standard();
        let z = HPoint::new(C64::new(0.0, 1.0)).unwrap();
        let s = SpectralSample::tabulate(&p, &[0.5, 1.0], &[z]).unwrap();
        assert_eq!(s.rows.len(), 2);
        // z = i beta is w = 0 where every eigenfunction is 1
        assert!((s.rows[0].re_psi - 1.0).abs() < 1e-14 && s.rows[0].im_psi.abs() < 1e-14);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("lambda,mu,re_z"));
        let empty = SpectralSample::tabulate(&p, &[], &[z]).unwrap();
        let mut buf = Vec::new();
        empty.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }
}
