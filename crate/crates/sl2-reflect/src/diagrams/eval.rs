//! Numeric values of diagrams with at most two internal vertices.

use std::collections::BTreeMap;
use std::f64::consts::PI;


use super::diagram::{Diagram, Prefactor, VertexKind};
use super::expr::Symbol;
use crate::error::{Error, Result};
use crate::halfplane::{HPoint, HQuadGrid, Layout};
use crate::specfun::gamma::gamma_ratio;
use crate::C64;

/// Symbol values, `beta`, and the points bound to external vertices.
#[derive(Debug, Clone)]
pub struct EvalContext {
    pub assignment: BTreeMap<Symbol, C64>,
    pub beta: f64,
    pub points: BTreeMap<String, HPoint>,
}

impl EvalContext {
    pub fn new(beta: f64) -> Self {
        EvalContext { assignment: BTreeMap::new(), beta, points: BTreeMap::new() }
    }

    pub fn assign(mut self, sym: Symbol, v: C64) -> Self {
        self.assignment.insert(sym, v);
        self
    }

    pub fn point(mut self, id: &str, z: HPoint) -> Self {
        self.points.insert(id.into(), z);
        self
    }

    /// The spin, which must be assigned and real.
    pub fn spin(&self) -> Result<f64> {
        let s = *self.assignment.get(&Symbol::S).ok_or_else(|| Error::InvalidParams("no value for s".into()))?;
        if s.im != 0.0 || !(s.re > 0.5) {
            return Err(Error::InvalidParams(format!("spin s = {s} must be real and above 1/2")));
        }
        Ok(s.re)
    }
}

/// Numeric value of a prefactor. A Gamma pole upstairs is a
/// [`Error::Pole`]; one downstairs gives zero.
pub fn evaluate_prefactor(p: &Prefactor, ctx: &EvalContext) -> Result<C64> {
    let a = &ctx.assignment;
    let num = p.gamma_num.iter().map(|e| e.eval(a)).collect::<Result<Vec<_>>>()?;
    let den = p.gamma_den.iter().map(|e| e.eval(a)).collect::<Result<Vec<_>>>()?;
    let s = ctx.spin()?;
    let ln_2ib = C64::new((2.0 * ctx.beta).ln(), 0.5 * PI);
    let pow = (p.pow_2ibeta.eval(a)? * ln_2ib).exp();
    let phase = C64::new(0.0, PI * s * p.phase_pi_s as f64).exp();
    Ok(p.scalar * phase * pow * gamma_ratio(&num, &den)?)
}

/// Where a vertex sits in a line: its value as a source and, conjugated,
/// as a target.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Known(C64),
    Var(usize),
}

struct Line {
    from: Slot,
    to: Slot,
    exp: C64,
}

impl Line {
    fn base(&self, vars: &[C64]) -> C64 {
        let pick = |s: Slot| match s {
            Slot::Known(z) => z,
            Slot::Var(k) => vars[k],
        };
        pick(self.from) - pick(self.to).conj()
    }
}

fn slot(d: &Diagram, id: &str, ctx: &EvalContext, vars: &[&str]) -> Result<Slot> {
    let ib = C64::new(0.0, ctx.beta);
    Ok(match d.kind(id)? {
        VertexKind::FixedPlus | VertexKind::FixedMinus => Slot::Known(ib),
        VertexKind::External => Slot::Known(
            ctx.points.get(id).ok_or_else(|| Error::InvalidParams(format!("no point bound to '{id}'")))?.z(),
        ),
        VertexKind::Internal => Slot::Var(vars.iter().position(|v| *v == id).expect("internal vertex listed")),
    })
}

fn ln_product(lines: &[Line], vars: &[C64]) -> C64 {
    lines.iter().map(|l| -l.exp * l.base(vars).ln()).sum()
}

/// Neighbour points of vertex `k`: known points and already fixed
/// variables. The integrand is singular at their mirror images.
fn anchors(lines: &[Line], k: usize, vars: &[C64], nvars: usize) -> Vec<C64> {
    let mut out = Vec::new();
    for l in lines {
        let other = match (l.from, l.to) {
            (Slot::Var(a), o) if a == k => o,
            (o, Slot::Var(b)) if b == k => o,
            _ => continue,
        };
        match other {
            Slot::Known(z) => out.push(z),
            Slot::Var(j) if j < nvars && j != k => out.push(vars[j]),
            _ => {}
        }
    }
    out
}

/// Total `Re` exponent over lines touching every vertex in `set`, counting
/// lines inside the set once.
fn decay(lines: &[Line], set: &[usize]) -> f64 {
    let touches = |s: Slot| matches!(s, Slot::Var(k) if set.contains(&k));
    lines.iter().filter(|l| touches(l.from) || touches(l.to)).map(|l| l.exp.re).sum()
}

/// Value of a diagram with no internal vertex: prefactor times the closed
/// powers.
pub fn evaluate_closed(d: &Diagram, ctx: &EvalContext) -> Result<C64> {
    if !d.internal_vertices().is_empty() {
        return Err(Error::InvalidParams("diagram has internal vertices; use evaluate_diagram".into()));
    }
    let lines = lines_of(d, ctx, &[])?;
    Ok(evaluate_prefactor(&d.prefactor, ctx)? * ln_product(&lines, &[]).exp())
}

fn lines_of(d: &Diagram, ctx: &EvalContext, vars: &[&str]) -> Result<Vec<Line>> {
    d.validate()?;
    let mut out = Vec::new();
    for e in &d.canonical().edges {
        out.push(Line {
            from: slot(d, &e.from, ctx, vars)?,
            to: slot(d, &e.to, ctx, vars)?,
            exp: e.exp.eval(&ctx.assignment)?,
        });
    }
    Ok(out)
}

/// Value of the integral a diagram stands for, prefactor included. Internal
/// vertices are integrated on `grid`, split over each vertex's neighbours by
/// a partition of unity; a polar grid gets extra radial octaves when the
/// integrand decays slowly. Checks that
/// the integrand decays faster than the measure grows at every vertex and
/// jointly, else [`Error::Divergence`]; more than two internal vertices is
/// an error.
pub fn evaluate_diagram(d: &Diagram, ctx: &EvalContext, grid: &HQuadGrid) -> Result<C64> {
    let vars = d.internal_vertices();
    if vars.is_empty() {
        return evaluate_closed(d, ctx);
    }
    if vars.len() > 2 {
        return Err(Error::InvalidParams(format!(
            "{} internal vertices; numeric evaluation is capped at two",
            vars.len()
        )));
    }
    let s = ctx.spin()?;
    if (grid.s - s).abs() > 1e-14 {
        return Err(Error::InvalidParams(format!("grid built for s = {} used with s = {s}", grid.s)));
    }
    let lines = lines_of(d, ctx, &vars)?;
    for (k, v) in vars.iter().enumerate() {
        let e = decay(&lines, &[k]);
        if !(e > 2.0 * s) {
            return Err(Error::Divergence(format!("lines at '{v}' decay like |v|^-{e}, need more than 2s = {}", 2.0 * s)));
        }
    }
    if vars.len() == 2 && !(decay(&lines, &[0, 1]) > 4.0 * s) {
        return Err(Error::Divergence(format!(
            "joint decay {} at both internal vertices does not beat 4s",
            decay(&lines, &[0, 1])
        )));
    }
    // slowest algebraic tail past the measure sets the radial length
    let margin = (0..vars.len()).map(|k| decay(&lines, &[k]) - 2.0 * s).fold(f64::INFINITY, f64::min);
    let margin = if vars.len() == 2 { margin.min(decay(&lines, &[0, 1]) - 4.0 * s) } else { margin };
    let lengthened;
    let grid = match grid.layout {
        Layout::Polar { angular_nodes, radial_panels, radial_nodes, octaves, octave_split } => {
            let want = ((34.0 / margin).ceil() as usize).min(50);
            if want > octaves {
                let layout = Layout::Polar { angular_nodes, radial_panels, radial_nodes, octaves: want, octave_split };
                lengthened = HQuadGrid::new(s, layout)?;
                &lengthened
            } else {
                grid
            }
        }
        Layout::Strip { .. } => grid,
    };
    let pref = evaluate_prefactor(&d.prefactor, ctx)?;
    let value = if vars.len() == 1 {
        grid.integrate_anchored(&anchors(&lines, 0, &[], 0), |v| ln_product(&lines, &[v]).exp())
    } else {
        // outer vertex: the one with fewer known neighbours
        let known = |k: usize| anchors(&lines, k, &[], 0).len();
        let (outer, inner) = if known(0) <= known(1) { (0, 1) } else { (1, 0) };
        grid.integrate_anchored(&anchors(&lines, outer, &[], 0), |u| {
            let mut vars = [C64::new(0.0, 0.0); 2];
            vars[outer] = u;
            grid.integrate_anchored_seq(&anchors(&lines, inner, &vars, 2), |v| {
                let mut x = vars;
                x[inner] = v;
                ln_product(&lines, &x).exp()
            })
        })
    };
    if !value.is_finite() {
        return Err(Error::Convergence("diagram integral produced a non-finite value".into()));
    }
    Ok(pref * value)
}
