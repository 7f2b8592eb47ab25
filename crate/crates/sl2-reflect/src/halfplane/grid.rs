//! Quadrature grids for the weighted measure on the upper half-plane.
//!
//! A grid is a template of nodes for center 0 and scale 1, placed at
//! `center + scale * p` with weights multiplied by `scale^{2s}` (the measure
//! is homogeneous of degree `2s`). Re-centering is free, which is what nested
//! integrals need.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::quad::{gauss_jacobi, gauss_legendre};

/// Node layout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Layout {
    /// Polar coordinates about the center. The radius uses `r = t/(1-t)`:
    /// `radial_panels` uniform panels on `t in [0, 1/2]`, then one panel per
    /// halving of `1 - t` (`octaves` of them, each split `octave_split` ways).
    Polar {
        angular_nodes: usize,
        radial_panels: usize,
        radial_nodes: usize,
        octaves: usize,
        octave_split: usize,
    },
    /// Cartesian strip `|x| <= half_width`, for bounded oscillatory
    /// integrands whose tail beyond the strip cancels. Nothing outside the
    /// strip is sampled.
    Strip {
        half_width: f64,
        panel_width: f64,
        panel_nodes: usize,
        y_octaves: usize,
        y_nodes: usize,
    },
}

impl Layout {
    pub fn polar_default() -> Self {
        Layout::Polar { angular_nodes: 32, radial_panels: 4, radial_nodes: 16, octaves: 44, octave_split: 1 }
    }
}

/// Template grid plus placement.
#[derive(Debug, Clone)]
pub struct HQuadGrid {
    pub s: f64,
    pub layout: Layout,
    pub center: f64,
    pub scale: f64,
    template: Arc<Vec<(C64, f64)>>,
}

/// Angular rule on `(0, pi)` whose weights carry
/// `(2s-1)/pi (2 sin phi)^{2s-2} dphi`.
pub fn angular_rule(s: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    let e = 2.0 * s - 2.0;
    let rule = gauss_jacobi(n, e, e)?;
    let norm = (2.0 * s - 1.0) / PI;
    Ok(rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let phi = 0.5 * PI * (1.0 + x);
            // (2 sin phi)^{e} = (1 - x^2)^e * (2 cos(pi x/2) / (1 - x^2))^e
            let om = 1.0 - x * x;
            let smooth = if e == 0.0 { 1.0 } else { (2.0 * (0.5 * PI * x).cos() / om).powf(e) };
            (phi, norm * w * smooth * 0.5 * PI)
        })
        .collect())
}

/// Radial rule on `(0, inf)` whose weights carry `r^{2s-1} dr`.
fn radial_rule(s: f64, panels: usize, nodes: usize, octaves: usize, split: usize) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let h = 0.5 / panels as f64;
    // first panel: t^{2s-1} in the Jacobi weight
    let gj = gauss_jacobi(nodes, 0.0, 2.0 * s - 1.0)?;
    for (&x, &w) in gj.nodes.iter().zip(&gj.weights) {
        let t = 0.5 * h * (1.0 + x);
        let om = 1.0 - t;
        // r^{2s-1} dr = t^{2s-1} (1-t)^{-2s-1} dt
        out.push((t / om, w * (0.5 * h).powf(2.0 * s) * om.powf(-2.0 * s - 1.0)));
    }
    let gl = gauss_legendre(nodes);
    let push = |a: f64, b: f64, out: &mut Vec<(f64, f64)>| {
        for (t, w) in gl.mapped(a, b) {
            let om = 1.0 - t;
            let r = t / om;
            out.push((r, w * r.powf(2.0 * s - 1.0) / (om * om)));
        }
    };
    for k in 1..panels {
        push(h * k as f64, h * (k + 1) as f64, &mut out);
    }
    // octave panels are parametrised by the gap 1 - t itself so that deep
    // octaves keep full precision
    for k in 1..=octaves {
        let gap_hi = 0.5f64.powi(k as i32);
        for j in 0..split {
            let hi = gap_hi * 0.5f64.powf(j as f64 / split as f64);
            let lo = gap_hi * 0.5f64.powf((j + 1) as f64 / split as f64);
            for (om, w) in gl.mapped(lo, hi) {
                let r = (1.0 - om) / om;
                out.push((r, w * r.powf(2.0 * s - 1.0) / (om * om)));
            }
        }
    }
    Ok(out)
}

fn build_template(s: f64, layout: &Layout) -> Result<Vec<(C64, f64)>> {
    match *layout {
        Layout::Polar { angular_nodes, radial_panels, radial_nodes, octaves, octave_split } => {
            let ang = angular_rule(s, angular_nodes)?;
            let rad = radial_rule(s, radial_panels.max(1), radial_nodes, octaves, octave_split.max(1))?;
            let mut out = Vec::with_capacity(ang.len() * rad.len());
            for &(r, wr) in &rad {
                for &(phi, wa) in &ang {
                    out.push((C64::from_polar(r, phi), wr * wa));
                }
            }
            Ok(out)
        }
        Layout::Strip { half_width, panel_width, panel_nodes, y_octaves, y_nodes } => {
            let e = 2.0 * s - 2.0;
            let norm = (2.0 * s - 1.0) / PI * 2f64.powf(e);
            // y in [0, 1] with y^{2s-2} in the rule, then [2^k, 2^{k+1}]
            let mut ys = Vec::new();
            let gj = gauss_jacobi(y_nodes, 0.0, e)?;
            for (&x, &w) in gj.nodes.iter().zip(&gj.weights) {
                ys.push((0.5 * (1.0 + x), w * 0.5f64.powf(e + 1.0)));
            }
            let gl_y = gauss_legendre(y_nodes);
            for k in 0..y_octaves {
                let a = 2f64.powi(k as i32);
                for (y, w) in gl_y.mapped(a, 2.0 * a) {
                    ys.push((y, w * y.powf(e)));
                }
            }
            let panels = (2.0 * half_width / panel_width).ceil().max(1.0) as usize;
            let width = 2.0 * half_width / panels as f64;
            let gl_x = gauss_legendre(panel_nodes);
            let mut out = Vec::with_capacity(ys.len() * panels * panel_nodes);
            for k in 0..panels {
                let a = -half_width + width * k as f64;
                for (x, wx) in gl_x.mapped(a, a + width) {
                    for &(y, wy) in &ys {
                        out.push((C64::new(x, y), norm * wx * wy));
                    }
                }
            }
            Ok(out)
        }
    }
}

static GRIDS_BUILT: AtomicUsize = AtomicUsize::new(0);

/// Number of grid templates built so far in this process.
pub fn grids_built() -> usize {
    GRIDS_BUILT.load(Ordering::Relaxed)
}

impl HQuadGrid {
    pub fn new(s: f64, layout: Layout) -> Result<Self> {
        if !(s > 0.5) {
            return Err(Error::InvalidParams(format!("spin s = {s} must satisfy s > 1/2")));
        }
        GRIDS_BUILT.fetch_add(1, Ordering::Relaxed);
        let template = Arc::new(build_template(s, &layout)?);
        Ok(HQuadGrid { s, layout, center: 0.0, scale: 1.0, template })
    }

    /// Default polar grid for spin `s`.
    pub fn polar(s: f64) -> Result<Self> {
        Self::new(s, Layout::polar_default())
    }

    /// Polar grid with the given angular node count and number of uniform
    /// radial panels; remaining settings at their defaults.
    pub fn polar_with(s: f64, angular_nodes: usize, radial_panels: usize) -> Result<Self> {
        let Layout::Polar { radial_nodes, octaves, octave_split, .. } = Layout::polar_default() else {
            unreachable!()
        };
        Self::new(s, Layout::Polar { angular_nodes, radial_panels, radial_nodes, octaves, octave_split })
    }

    /// Same template placed at `center + scale * p`.
    pub fn placed(&self, center: f64, scale: f64) -> Self {
        HQuadGrid { center, scale, ..self.clone() }
    }

    /// Placement centred at `Re z` with scale `Im z`: the natural frame for
    /// integrands peaked at the mirror point `conj(z)`.
    pub fn around(&self, z: C64) -> Self {
        self.placed(z.re, z.im)
    }

    pub fn len(&self) -> usize {
        self.template.len()
    }

    pub fn is_empty(&self) -> bool {
        self.template.is_empty()
    }

    pub fn angular_nodes(&self) -> usize {
        match self.layout {
            Layout::Polar { angular_nodes, .. } => angular_nodes,
            Layout::Strip { y_nodes, .. } => y_nodes,
        }
    }

    pub fn radial_panels(&self) -> usize {
        match self.layout {
            Layout::Polar { radial_panels, .. } => radial_panels,
            Layout::Strip { half_width, panel_width, .. } => (2.0 * half_width / panel_width).ceil() as usize,
        }
    }

    pub fn radial_map_scale(&self) -> f64 {
        self.scale
    }

    /// Grid with every panel halved and twice the angular nodes.
    pub fn refined(&self) -> Result<Self> {
        let layout = match self.layout {
            Layout::Polar { angular_nodes, radial_panels, radial_nodes, octaves, octave_split } => Layout::Polar {
                angular_nodes: angular_nodes * 2,
                radial_panels: radial_panels * 2,
                radial_nodes,
                octaves,
                octave_split: octave_split * 2,
            },
            Layout::Strip { half_width, panel_width, panel_nodes, y_octaves, y_nodes } => Layout::Strip {
                half_width,
                panel_width: panel_width / 2.0,
                panel_nodes,
                y_octaves,
                y_nodes: y_nodes * 2,
            },
        };
        Ok(HQuadGrid::new(self.s, layout)?.placed(self.center, self.scale))
    }

    /// Placed nodes and real weights.
    pub fn nodes(&self) -> impl Iterator<Item = (C64, f64)> + '_ {
        let ws = self.scale.powf(2.0 * self.s);
        self.template
            .iter()
            .map(move |&(p, w)| (C64::new(self.center + self.scale * p.re, self.scale * p.im), w * ws))
    }

    /// Weighted sum of `f` over the nodes. Chunked so the result does not
    /// depend on the worker count.
    pub fn integrate<F: Fn(C64) -> C64 + Sync>(&self, f: F) -> C64 {
        let ws = self.scale.powf(2.0 * self.s);
        let (c, sc) = (self.center, self.scale);
        let parts: Vec<C64> = self
            .template
            .par_chunks(2048)
            .map(|chunk| {
                let mut acc = C64::new(0.0, 0.0);
                for &(p, w) in chunk {
                    let z = C64::new(c + sc * p.re, sc * p.im);
                    let v = f(z);
                    if v != C64::new(0.0, 0.0) {
                        acc += v * w;
                    }
                }
                acc
            })
            .collect();
        parts.into_iter().sum::<C64>() * ws
    }

    /// Sequential variant for use inside an outer parallel loop.
    pub fn integrate_seq<F: Fn(C64) -> C64>(&self, f: F) -> C64 {
        let ws = self.scale.powf(2.0 * self.s);
        let (c, sc) = (self.center, self.scale);
        let mut acc = C64::new(0.0, 0.0);
        for &(p, w) in self.template.iter() {
            let v = f(C64::new(c + sc * p.re, sc * p.im));
            if v != C64::new(0.0, 0.0) {
                acc += v * w;
            }
        }
        acc * ws
    }

    /// Integral of `f` split over several anchor points by a partition of
    /// unity, each share integrated on the template placed at its anchor.
    /// Suited to integrands singular near the mirror images `conj a_j` of
    /// several, possibly distant, anchors. The placement of `self` is
    /// ignored.
    pub fn integrate_anchored_seq<F: Fn(C64) -> C64>(&self, anchors: &[C64], f: F) -> C64 {
        let anchors = distinct(anchors);
        let mut acc = C64::new(0.0, 0.0);
        for (j, a) in anchors.iter().enumerate() {
            acc += self.placed(a.re, a.im).integrate_seq(|v| f(v) * share(&anchors, j, v));
        }
        acc
    }

    /// Parallel [`HQuadGrid::integrate_anchored_seq`].
    pub fn integrate_anchored<F: Fn(C64) -> C64 + Sync>(&self, anchors: &[C64], f: F) -> C64 {
        let anchors = distinct(anchors);
        let mut acc = C64::new(0.0, 0.0);
        for (j, a) in anchors.iter().enumerate() {
            acc += self.placed(a.re, a.im).integrate(|v| f(v) * share(&anchors, j, v));
        }
        acc
    }
}

/// Anchors with near-duplicates removed; `i` if none are given.
fn distinct(anchors: &[C64]) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::new();
    for &a in anchors {
        assert!(a.im > 0.0, "anchor {a} must lie in the upper half-plane");
        if !out.iter().any(|q| (q - a).norm() <= 1e-9 * a.im) {
            out.push(a);
        }
    }
    if out.is_empty() {
        out.push(C64::new(0.0, 1.0));
    }
    out
}

/// Share of anchor `j` at `v`, proportional to `|v - conj a_j|^{-4}`.
fn share(anchors: &[C64], j: usize, v: C64) -> f64 {
    if anchors.len() == 1 {
        return 1.0;
    }
    let w = |a: C64| (v - a.conj()).norm_sqr().powi(-2);
    w(anchors[j]) / anchors.iter().map(|&a| w(a)).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angular_rule_total_weight() {
        // (2s-1)/pi int (2 sin)^{2s-2} = Gamma(2s)/Gamma(s)^2
        for s in [0.75, 1.0, 1.5] {
            let total: f64 = angular_rule(s, 20).unwrap().iter().map(|x| x.1).sum();
            let g = crate::specfun::gamma::gamma_real;
            let want = g(2.0 * s) / (g(s) * g(s));
            assert!((total - want).abs() < 1e-13, "{s}: {total} vs {want}");
        }
    }

    #[test]
    fn nodes_stay_in_upper_half_plane() {
        let g = HQuadGrid::polar(1.3).unwrap().placed(0.7, 0.01);
        assert!(g.nodes().all(|(z, w)| z.im > 0.0 && w.is_finite()));
    }

    #[test]
    fn radial_rule_integrates_algebraic_decay() {
        // int_0^inf r^{2s-1} (1 + r)^{-2s-2} dr = B(2s, 2)
        let s = 1.2;
        let rad = radial_rule(s, 4, 16, 44, 1).unwrap();
        let v: f64 = rad.iter().map(|&(r, w)| w * (1.0 + r).powf(-2.0 * s - 2.0)).sum();
        let g = crate::specfun::gamma::gamma_real;
        let want = g(2.0 * s) * g(2.0) / g(2.0 * s + 2.0);
        assert!((v - want).abs() < 1e-13 * want);
    }

    #[test]
    fn anchored_matches_single_placement() {
        // int (z - conj v)^{-a} (w - conj v)^{-b} Dv with far-apart z, w is a
        // single power by the chain identity; compare both routes
        let s = 1.0;
        let g = HQuadGrid::polar(s).unwrap();
        let (z, w) = (C64::new(0.0, 1.0), C64::new(30.0, 0.5));
        let f = |v: C64| (-1.5 * (z - v.conj()).ln() - 1.2 * (v - w.conj()).ln()).exp();
        let a = g.integrate_anchored(&[z, w, z], f);
        let b = g.integrate_anchored_seq(&[z, w], f);
        assert!((a - b).norm() < 1e-14);
        let gm = crate::specfun::gamma::gamma_real;
        let want = C64::new(0.0, -std::f64::consts::PI * s).exp() * gm(0.7) * gm(2.0) / (gm(1.5) * gm(1.2))
            * (-0.7 * (z - w.conj()).ln()).exp();
        assert!((a - want).norm() < 1e-7 * want.norm(), "{a} vs {want}");
    }
}
