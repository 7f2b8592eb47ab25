//! Diagrams: directed propagator lines between points of the upper
//! half-plane, integrated internal vertices, and a symbolic prefactor.

use serde::{Deserialize, Serialize};

use super::expr::ExponentExpr;
use crate::error::{Error, Result};
use crate::C64;

/// Vertex kinds. A line `a -> b` stands for `(a - conj b)^{-e}`; the fixed
/// point `i beta` enters as `i beta` when it is the source (`FixedPlus`) and
/// through `conj(i beta) = -i beta` when it is the target (`FixedMinus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// Free point, valued by the caller under its id.
    External,
    FixedPlus,
    FixedMinus,
    /// Integrated with the half-plane measure.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub exp: ExponentExpr,
}

/// `scalar * e^{i pi s phase_pi_s} (2 i beta)^{pow_2ibeta} prod Gamma(num) / prod Gamma(den)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prefactor {
    #[serde(default)]
    pub gamma_num: Vec<ExponentExpr>,
    #[serde(default)]
    pub gamma_den: Vec<ExponentExpr>,
    #[serde(default)]
    pub pow_2ibeta: ExponentExpr,
    #[serde(default)]
    pub phase_pi_s: i64,
    #[serde(default = "unit")]
    pub scalar: C64,
}

fn unit() -> C64 {
    C64::new(1.0, 0.0)
}

impl Default for Prefactor {
    fn default() -> Self {
        Prefactor::one()
    }
}

impl std::fmt::Display for Prefactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gammas = |v: &[ExponentExpr]| v.iter().map(|e| format!("Gamma({e})")).collect::<Vec<_>>().join(" ");
        let mut parts = Vec::new();
        if self.scalar != C64::new(1.0, 0.0) {
            parts.push(format!("({})", self.scalar));
        }
        if self.phase_pi_s != 0 {
            parts.push(format!("e^(i pi s {})", self.phase_pi_s));
        }
        if !self.pow_2ibeta.is_zero() {
            parts.push(format!("(2i beta)^({})", self.pow_2ibeta));
        }
        if !self.gamma_num.is_empty() {
            parts.push(gammas(&self.gamma_num));
        }
        let num = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
        if self.gamma_den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "{num} / [{}]", gammas(&self.gamma_den))
        }
    }
}

impl Prefactor {
    pub fn one() -> Self {
        Prefactor {
            gamma_num: vec![],
            gamma_den: vec![],
            pow_2ibeta: ExponentExpr::zero(),
            phase_pi_s: 0,
            scalar: unit(),
        }
    }

    /// `Gamma(num) / Gamma(den)` with nothing else.
    pub fn gammas(num: Vec<ExponentExpr>, den: Vec<ExponentExpr>) -> Self {
        Prefactor { gamma_num: num, gamma_den: den, ..Prefactor::one() }.canonical()
    }

    /// Product of two prefactors in canonical form.
    pub fn times(&self, o: &Prefactor) -> Prefactor {
        Prefactor {
            gamma_num: self.gamma_num.iter().chain(&o.gamma_num).cloned().collect(),
            gamma_den: self.gamma_den.iter().chain(&o.gamma_den).cloned().collect(),
            pow_2ibeta: &self.pow_2ibeta + &o.pow_2ibeta,
            phase_pi_s: self.phase_pi_s + o.phase_pi_s,
            scalar: self.scalar * o.scalar,
        }
        .canonical()
    }

    /// Cancels Gamma factors that appear identically upstairs and
    /// downstairs and sorts both lists. No functional equation is applied.
    pub fn canonical(&self) -> Prefactor {
        let mut num = self.gamma_num.clone();
        let mut den = Vec::new();
        for d in &self.gamma_den {
            match num.iter().position(|n| n == d) {
                Some(k) => {
                    num.remove(k);
                }
                None => den.push(d.clone()),
            }
        }
        num.sort();
        den.sort();
        Prefactor { gamma_num: num, gamma_den: den, ..self.clone() }
    }

    /// Apply `f` to every exponent expression.
    pub fn map_exprs<F: Fn(&ExponentExpr) -> ExponentExpr>(&self, f: F) -> Prefactor {
        Prefactor {
            gamma_num: self.gamma_num.iter().map(&f).collect(),
            gamma_den: self.gamma_den.iter().map(&f).collect(),
            pow_2ibeta: f(&self.pow_2ibeta),
            ..self.clone()
        }
        .canonical()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagram {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub prefactor: Prefactor,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram { vertices: vec![], edges: vec![], prefactor: Prefactor::one() }
    }

    pub fn with_vertex(mut self, id: &str, kind: VertexKind) -> Self {
        self.vertices.push(Vertex { id: id.into(), kind });
        self
    }

    pub fn with_edge(mut self, from: &str, to: &str, exp: ExponentExpr) -> Self {
        self.edges.push(Edge { from: from.into(), to: to.into(), exp });
        self
    }

    pub fn with_prefactor(mut self, p: Prefactor) -> Self {
        self.prefactor = p;
        self
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn kind(&self, id: &str) -> Result<VertexKind> {
        self.vertex(id).map(|v| v.kind).ok_or_else(|| Error::InvalidParams(format!("no vertex '{id}'")))
    }

    pub fn internal_vertices(&self) -> Vec<&str> {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Internal).map(|v| v.id.as_str()).collect()
    }

    /// Edges with `id` as an endpoint.
    pub fn incident(&self, id: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.from == id || e.to == id).collect()
    }

    /// Unique ids, known endpoints, at most one fixed vertex of each sign,
    /// no line into `FixedPlus` or out of `FixedMinus`.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        for (k, v) in self.vertices.iter().enumerate() {
            if self.vertices[..k].iter().any(|u| u.id == v.id) {
                return bad(format!("duplicate vertex id '{}'", v.id));
            }
        }
        for kind in [VertexKind::FixedPlus, VertexKind::FixedMinus] {
            if self.vertices.iter().filter(|v| v.kind == kind).count() > 1 {
                return bad(format!("more than one {kind:?} vertex"));
            }
        }
        for e in &self.edges {
            let (a, b) = (self.kind(&e.from)?, self.kind(&e.to)?);
            if a == VertexKind::FixedMinus || b == VertexKind::FixedPlus {
                return bad(format!("line {} -> {} runs against the fixed-point convention", e.from, e.to));
            }
        }
        Ok(())
    }

    /// Structural normal form: vertices sorted by id, parallel lines merged
    /// (`X^{-a} X^{-b} = X^{-(a+b)}`), zero-exponent lines dropped, edges
    /// sorted, prefactor canonical.
    pub fn canonical(&self) -> Diagram {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let mut edges: Vec<Edge> = Vec::new();
        for e in &self.edges {
            match edges.iter_mut().find(|f| f.from == e.from && f.to == e.to) {
                Some(f) => f.exp = &f.exp + &e.exp,
                None => edges.push(e.clone()),
            }
        }
        edges.retain(|e| !e.exp.is_zero());
        edges.sort();
        Diagram { vertices, edges, prefactor: self.prefactor.canonical() }
    }

    /// Equality after canonicalisation.
    pub fn same_as(&self, o: &Diagram) -> bool {
        self.canonical() == o.canonical()
    }

    /// Rewrite every exponent (edges and prefactor) with `f`.
    pub fn map_exprs<F: Fn(&ExponentExpr) -> ExponentExpr>(&self, f: F) -> Diagram {
        let edges = self.edges.iter().map(|e| Edge { exp: f(&e.exp), ..e.clone() }).collect();
        Diagram { vertices: self.vertices.clone(), edges, prefactor: self.prefactor.map_exprs(f) }.canonical()
    }

    /// Moves every `FixedPlus -> FixedMinus` line, whose value is
    /// `(2 i beta)^{-e}`, into the prefactor power.
    pub fn absorb_fixed_lines(&self) -> Result<Diagram> {
        let mut out = self.clone();
        let mut pow = out.prefactor.pow_2ibeta.clone();
        let mut kept = Vec::new();
        for e in &self.edges {
            if self.kind(&e.from)? == VertexKind::FixedPlus && self.kind(&e.to)? == VertexKind::FixedMinus {
                pow = pow - e.exp.clone();
            } else {
                kept.push(e.clone());
            }
        }
        out.edges = kept;
        out.prefactor.pow_2ibeta = pow;
        Ok(out.canonical())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Diagram> {
        let d: Diagram = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: format!("diagram JSON line {}: {e}", e.line()),
        })?;
        d.validate()?;
        Ok(d)
    }
}

impl Default for Diagram {
    fn default() -> Self {
        Diagram::new()
    }
}

#[cfg(test)]
mod tests {
    use super::super::expr::ex;
    use super::*;

    const SAMPLE: &str = r#"{"vertices":[{"id":"z1","kind":"external"},{"id":"p","kind":"fixed_plus"},
        {"id":"m","kind":"fixed_minus"},{"id":"v1","kind":"internal"}],
        "edges":[{"from":"z1","to":"v1","exp":"g + x"},{"from":"p","to":"v1","exp":"s - x"},{"from":"v1","to":"m","exp":"2s + x - g"}],
        "prefactor":{"gamma_num":["g + x"],"gamma_den":["2s"],"pow_2ibeta":"s - x","phase_pi_s":2,"scalar":[1,0]}}"#;

    #[test]
    fn json_round_trip() {
        let d = Diagram::from_json(SAMPLE).unwrap();
        assert_eq!(d.edges[2].exp, ex("2s + x - g"));
        assert_eq!(d.prefactor.phase_pi_s, 2);
        assert_eq!(d.prefactor.scalar, C64::new(1.0, 0.0));
        let back = Diagram::from_json(&d.to_json().unwrap()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(Diagram::from_json("{"), Err(Error::Parse { .. })));
        let bad_exp = SAMPLE.replace("\"g + x\"}", "\"g + q\"}");
        assert!(matches!(Diagram::from_json(&bad_exp), Err(Error::Parse { .. })));
        let wrong_way = SAMPLE.replace(r#""from":"v1","to":"m""#, r#""from":"m","to":"v1""#);
        assert!(Diagram::from_json(&wrong_way).is_err());
    }

    #[test]
    fn canonical_merges_and_cancels() {
        let d = Diagram::new()
            .with_vertex("z", VertexKind::External)
            .with_vertex("m", VertexKind::FixedMinus)
            .with_edge("z", "m", ex("s - g"))
            .with_edge("z", "m", ex("g - s"))
            .with_prefactor(Prefactor::gammas(vec![ex("2s"), ex("g")], vec![ex("2s")]));
        let c = d.canonical();
        assert!(c.edges.is_empty());
        assert_eq!(c.prefactor.gamma_num, vec![ex("g")]);
        assert!(c.prefactor.gamma_den.is_empty());
    }

    #[test]
    fn fixed_lines_become_powers() {
        let d = Diagram::new()
            .with_vertex("p", VertexKind::FixedPlus)
            .with_vertex("m", VertexKind::FixedMinus)
            .with_edge("p", "m", ex("eps - i*lam - i*rho"));
        let a = d.absorb_fixed_lines().unwrap();
        assert!(a.edges.is_empty());
        assert_eq!(a.prefactor.pow_2ibeta, ex("i*lam + i*rho - eps"));
    }
}
