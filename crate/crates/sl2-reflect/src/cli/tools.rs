//! The non-verification subcommands: eigenfunction tabulation, transforms of
//! sampled input, and diagram rewriting and evaluation.

use std::f64::consts::PI;
use std::io::Write;
use std::str::FromStr;

use serde::Deserialize;

use super::config::Config;
use crate::diagrams::{evaluate_diagram, rewrite, Diagram, EvalContext, RewriteRule, RewriteStep, Symbol};
use crate::error::{Error, Result};
use crate::halfplane::{AnalyticFn, HPoint};
use crate::reflection::eigenfunction_via_reflection;
use crate::spectral::{index_transform_j, psi, transform_t, transform_u, transform_udag, HalfLineFn};
use crate::{SpinParams, C64};

fn input_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Parses `3`, `-0.5`, `2i`, `-i`, `1+2i`, `1.5e-3-0.2i` and similar.
pub fn parse_complex(text: &str) -> Result<C64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || input_err(format!("cannot read '{text}' as a complex number"));
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(C64::new(num(&t)?, 0.0));
    };
    // split before the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .unwrap_or(0);
    let (re, im) = body.split_at(split);
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => num(s)?,
    };
    let re = if re.is_empty() { 0.0 } else { num(re)? };
    Ok(C64::new(re, im))
}

/// Parses `key=value` pairs separated by commas.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, C64)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| input_err(format!("expected key=value, got '{kv}'")))?;
            Ok((k.trim().to_string(), parse_complex(v)?))
        })
        .collect()
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

/// Reads a JSON list of `[re, im]` points in the upper half-plane.
pub fn read_points(path: &std::path::Path) -> Result<Vec<HPoint>> {
    let pts: Vec<[f64; 2]> =
        serde_json::from_str(&read(path)?).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    pts.into_iter().map(|[re, im]| HPoint::new(C64::new(re, im)).map_err(|e| input_err(e.to_string()))).collect()
}

/// CSV of `Psi_lambda` on `points`, computed through the reflection
/// operator, with the distance to the direct hypergeometric value.
pub fn eigenfn<W: Write>(params: &SpinParams, lambda: f64, points: &[HPoint], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["re_z", "im_z", "re_psi", "im_psi", "residual"]).map_err(io)?;
    for &z in points {
        let v = eigenfunction_via_reflection(params, lambda, z)?;
        let r = (v - psi(params, lambda, z)?).norm();
        let zz = z.z();
        w.write_record([zz.re, zz.im, v.re, v.im, r].iter().map(|x| x.to_string())).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    T,
    J,
    U,
    Udag,
}

impl FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "t" => Ok(TransformKind::T),
            "j" => Ok(TransformKind::J),
            "u" => Ok(TransformKind::U),
            "udag" | "u_dag" | "udagger" => Ok(TransformKind::Udag),
            other => Err(input_err(format!("unknown transform '{other}'; expected T, J, U or Udag"))),
        }
    }
}

/// Transform input. `J` and `Udag` read `points` as half-line abscissae
/// with values interpolated linearly and zero past the last point. `U` and
/// `T` read `points` as `[re, im]` centres `a_k` and act on
/// `sum_k c_k e^{i pi s} (z - conj a_k)^{-2s}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Samples {
    pub points: Vec<serde_json::Value>,
    pub values: Vec<[f64; 2]>,
}

impl Samples {
    pub fn from_json(text: &str) -> Result<Samples> {
        let s: Samples = serde_json::from_str(text).map_err(|e| input_err(format!("samples JSON: {e}")))?;
        if s.points.len() != s.values.len() {
            return Err(input_err(format!("{} points but {} values", s.points.len(), s.values.len())));
        }
        Ok(s)
    }

    fn coefficients(&self) -> Vec<C64> {
        self.values.iter().map(|&[re, im]| C64::new(re, im)).collect()
    }

    /// Piecewise-linear half-line function through the samples.
    pub fn half_line(&self) -> Result<HalfLineFn> {
        let ys = self
            .points
            .iter()
            .map(|p| p.as_f64().filter(|y| *y >= 0.0).ok_or_else(|| input_err(format!("half-line point {p} must be a number >= 0"))))
            .collect::<Result<Vec<f64>>>()?;
        if ys.windows(2).any(|w| w[1] <= w[0]) {
            return Err(input_err("half-line points must increase strictly"));
        }
        let vs = self.coefficients();
        Ok(HalfLineFn::new(
            move |y| {
                if ys.is_empty() || y > ys[ys.len() - 1] {
                    return C64::new(0.0, 0.0);
                }
                if y <= ys[0] {
                    return vs[0];
                }
                let k = ys.partition_point(|&t| t <= y).min(ys.len() - 1);
                let t = (y - ys[k - 1]) / (ys[k] - ys[k - 1]);
                vs[k - 1] * (1.0 - t) + vs[k] * t
            },
            f64::NEG_INFINITY,
        ))
    }

    /// Combination of reproducing kernels centred at the sample points.
    pub fn kernel_sum(&self, s: f64) -> Result<AnalyticFn> {
        let centres = self
            .points
            .iter()
            .map(|p| {
                let pair: [f64; 2] =
                    serde_json::from_value(p.clone()).map_err(|_| input_err(format!("centre {p} must be [re, im]")))?;
                let a = C64::new(pair[0], pair[1]);
                if !(a.im > 0.0) {
                    return Err(input_err(format!("centre {a} must lie in the upper half-plane")));
                }
                Ok(a)
            })
            .collect::<Result<Vec<C64>>>()?;
        let terms: Vec<(C64, C64)> = centres.iter().map(|a| a.conj()).zip(self.coefficients()).collect();
        let phase = C64::new(0.0, PI * s).exp();
        let e = 2.0 * s;
        let deriv = move |terms: Vec<(C64, C64)>, k: usize| {
            // d^k/dz^k (z - b)^{-e} = (-e)(-e-1)...(-e-k+1) (z - b)^{-e-k}
            let fall: f64 = (0..k).map(|j| -e - j as f64).product();
            move |z: C64| terms.iter().map(|&(b, c)| c * phase * fall * (z - b).powf(-e - k as f64)).sum::<C64>()
        };
        Ok(AnalyticFn::new(deriv(terms.clone(), 0), e)
            .with_deriv1(deriv(terms.clone(), 1))
            .with_deriv2(deriv(terms, 2))
            .with_anchors(&centres))
    }
}

/// Applies a transform and writes CSV: `y` for U, `lambda` for T and J,
/// `re_z, im_z` for Udag, then the real and imaginary parts.
pub fn run_transform<W: Write>(kind: TransformKind, samples: &Samples, at: &[C64], cfg: &Config, out: W) -> Result<()> {
    let p = cfg.spin_params()?;
    let real = |v: &C64| {
        if v.im == 0.0 {
            Ok(v.re)
        } else {
            Err(input_err(format!("evaluation point {v} must be real for {kind:?}")))
        }
    };
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    let header: &[&str] = match kind {
        TransformKind::U => &["y", "re", "im"],
        TransformKind::T | TransformKind::J => &["lambda", "re", "im"],
        TransformKind::Udag => &["re_z", "im_z", "re", "im"],
    };
    w.write_record(header).map_err(io)?;
    let mut put = |fields: Vec<f64>| w.write_record(fields.iter().map(|x| x.to_string())).map_err(io);
    match kind {
        TransformKind::U | TransformKind::T => {
            let f = samples.kernel_sum(p.s)?;
            let grid = cfg.grid(p.s)?;
            let default: Vec<C64> = if kind == TransformKind::U {
                [0.0, 0.5, 1.0, 2.0, 4.0].iter().map(|&y| C64::new(y, 0.0)).collect()
            } else {
                cfg.lambda_grid.iter().map(|&l| C64::new(l, 0.0)).collect()
            };
            for v in if at.is_empty() { &default[..] } else { at } {
                let t = real(v)?;
                let r = if kind == TransformKind::U { transform_u(&f, &p, t, &grid)? } else { transform_t(&f, &p, t, &grid)? };
                put(vec![t, r.re, r.im])?;
            }
        }
        TransformKind::J => {
            let chi = samples.half_line()?;
            let default: Vec<C64> = cfg.lambda_grid.iter().map(|&l| C64::new(l, 0.0)).collect();
            for v in if at.is_empty() { &default[..] } else { at } {
                let l = real(v)?;
                let r = index_transform_j(&chi, &p, l)?;
                put(vec![l, r.re, r.im])?;
            }
        }
        TransformKind::Udag => {
            let chi = samples.half_line()?;
            let default = [C64::new(0.0, 2.0 * p.beta)];
            for &z in if at.is_empty() { &default[..] } else { at } {
                let r = transform_udag(&chi, &p, HPoint::new(z).map_err(|e| input_err(e.to_string()))?)?;
                put(vec![z.re, z.im, r.re, r.im])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a diagram from JSON; malformed input is an input error.
pub fn read_diagram(path: &std::path::Path) -> Result<Diagram> {
    Diagram::from_json(&read(path)?).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

/// One rewrite of the diagram in `text`.
pub fn diagram_rewrite(d: &Diagram, rule: &str, vertex: &str) -> Result<(Diagram, RewriteStep)> {
    let rule = RewriteRule::from_str(rule).map_err(|e| input_err(e.to_string()))?;
    rewrite(d, rule, vertex)
}

/// Value of a diagram. `assign` binds symbols and optionally `beta`; `s`,
/// `g` and `beta` default to the configuration. `points` binds external
/// vertices.
pub fn diagram_eval(d: &Diagram, assign: &str, points: &str, cfg: &Config) -> Result<C64> {
    let mut beta = cfg.params.beta;
    let mut syms = vec![(Symbol::S, C64::new(cfg.params.s, 0.0)), (Symbol::G, C64::new(cfg.params.g, 0.0))];
    for (k, v) in parse_pairs(assign)? {
        if k == "beta" {
            if v.im != 0.0 || !(v.re > 0.0) {
                return Err(input_err(format!("beta = {v} must be real and positive")));
            }
            beta = v.re;
        } else {
            syms.push((Symbol::from_str(&k).map_err(|e| input_err(e.to_string()))?, v));
        }
    }
    let mut ctx = EvalContext::new(beta);
    for (sym, v) in syms {
        ctx = ctx.assign(sym, v);
    }
    for (k, z) in parse_pairs(points)? {
        ctx = ctx.point(&k, HPoint::new(z).map_err(|e| input_err(format!("point {k}: {e}")))?);
    }
    let s = ctx.spin().map_err(|e| input_err(e.to_string()))?;
    evaluate_diagram(d, &ctx, &cfg.grid(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        for (t, want) in [
            ("2i", c(0.0, 2.0)),
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("1+2i", c(1.0, 2.0)),
            ("1 - i", c(1.0, -1.0)),
            ("-0.5-1.5i", c(-0.5, -1.5)),
            ("1e-3+2e+1i", c(1e-3, 20.0)),
            ("3", c(3.0, 0.0)),
            ("-2.5e-2", c(-0.025, 0.0)),
        ] {
            assert_eq!(parse_complex(t).unwrap(), want, "{t}");
        }
        for t in ["", "x", "1+", "2j", "1+2+3i"] {
            assert!(parse_complex(t).is_err(), "{t}");
        }
    }

    #[test]
    fn pairs() {
        let p = parse_pairs("s=1, g=1,x=0.3").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[2], ("x".to_string(), c(0.3, 0.0)));
        assert!(parse_pairs("s").is_err());
    }

    #[test]
    fn half_line_interpolates() {
        let s = Samples::from_json(r#"{"points": [0, 1, 2], "values": [[1, 0], [3, 0], [0, 1]]}"#).unwrap();
        let f = s.half_line().unwrap();
        assert_eq!(f.eval(0.5), c(2.0, 0.0));
        assert_eq!(f.eval(1.5), c(1.5, 0.5));
        assert_eq!(f.eval(2.5), c(0.0, 0.0));
        assert!(Samples::from_json(r#"{"points": [0], "values": []}"#).is_err());
        let back = Samples::from_json(r#"{"points": [1, 0], "values": [[1, 0], [1, 0]]}"#).unwrap();
        assert!(back.half_line().is_err());
    }

    #[test]
    fn kernel_sum_matches_reproducing_kernel() {
        let s = Samples::from_json(r#"{"points": [[0, 1], [1, 2]], "values": [[1, 0], [0, 2]]}"#).unwrap();
        let f = s.kernel_sum(1.0).unwrap();
        let z = c(0.3, 0.7);
        let k = |a: C64| -(z - a.conj()).powi(-2);
        let want = k(c(0.0, 1.0)) + c(0.0, 2.0) * k(c(1.0, 2.0));
        assert!((f.eval(z) - want).norm() < 1e-14);
        let h = 1e-5;
        let fd = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
        assert!((f.deriv(z, 1) - fd).norm() < 1e-6);
    }
}
