//! The two diagram identities: the chain rule and the Euler transformation.

use serde::{Deserialize, Serialize};

use super::diagram::{Diagram, Edge, Prefactor, VertexKind};
use super::expr::{ExponentExpr, Symbol};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewriteRule {
    /// `int Dv (z - conj v)^{-a} (v - conj w)^{-b} = a(a, b) (z - conj w)^{-(a+b-2s)}`.
    Chain,
    /// The three-line star at a vertex joined to a free point, `i beta` and `-i beta`.
    Euler,
}

impl std::str::FromStr for RewriteRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "chain" => Ok(RewriteRule::Chain),
            "euler" => Ok(RewriteRule::Euler),
            other => Err(Error::InvalidParams(format!("unknown rewrite rule '{other}'"))),
        }
    }
}

/// One rule application and the factor it contributed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub vertex: String,
    pub coefficient_delta: Prefactor,
}

fn s2() -> ExponentExpr {
    ExponentExpr::term(super::expr::Coef::int(2), Symbol::S)
}

fn not_applicable(rule: &str, v: &str, why: &str) -> Error {
    Error::NotApplicable(format!("{rule} at '{v}': {why}"))
}

fn internal(d: &Diagram, v: &str, rule: &str) -> Result<()> {
    match d.kind(v)? {
        VertexKind::Internal => Ok(()),
        k => Err(not_applicable(rule, v, &format!("vertex is {k:?}, not internal"))),
    }
}

/// `a(l, r) = e^{-i pi s} Gamma(l + r - 2s) Gamma(2s) / (Gamma(l) Gamma(r))`.
pub fn chain_coefficient(l: &ExponentExpr, r: &ExponentExpr) -> Prefactor {
    let mut p = Prefactor::gammas(vec![&(l + r) - &s2(), s2()], vec![l.clone(), r.clone()]);
    p.phase_pi_s = -1;
    p
}

/// `C(l, n, r) = (2 i beta)^{2s-n-r} Gamma(4s-l-n-r) Gamma(l+n+r-2s) / (Gamma(r) Gamma(2s-r))`.
pub fn euler_coefficient(l: &ExponentExpr, n: &ExponentExpr, r: &ExponentExpr) -> Prefactor {
    let sum = &(l + n) + r;
    let mut p = Prefactor::gammas(vec![&(&s2() + &s2()) - &sum, &sum - &s2()], vec![r.clone(), &s2() - r]);
    p.pow_2ibeta = &(&s2() - n) - r;
    p
}

/// Chain rule at internal vertex `v` with exactly one incoming line
/// `a -> v` (exponent `l`) and one outgoing line `v -> b` (exponent `r`).
pub fn chain_step(d: &Diagram, v: &str) -> Result<(Diagram, RewriteStep)> {
    let d = d.canonical();
    internal(&d, v, "chain rule")?;
    let inc = d.incident(v);
    let ins: Vec<&Edge> = inc.iter().copied().filter(|e| e.to == v && e.from != v).collect();
    let outs: Vec<&Edge> = inc.iter().copied().filter(|e| e.from == v && e.to != v).collect();
    if inc.len() != 2 || ins.len() != 1 || outs.len() != 1 {
        return Err(not_applicable(
            "chain rule",
            v,
            &format!("needs one incoming and one outgoing line, found {} in / {} out", ins.len(), outs.len()),
        ));
    }
    let (a, l) = (ins[0].from.clone(), ins[0].exp.clone());
    let (b, r) = (outs[0].to.clone(), outs[0].exp.clone());
    let delta = chain_coefficient(&l, &r);
    let mut out = d.clone();
    out.edges.retain(|e| e.from != v && e.to != v);
    out.vertices.retain(|x| x.id != v);
    out.edges.push(Edge { from: a, to: b, exp: &(&l + &r) - &s2() });
    out.prefactor = out.prefactor.times(&delta);
    let step = RewriteStep { rule: RewriteRule::Chain, vertex: v.into(), coefficient_delta: delta };
    Ok((out.canonical(), step))
}

/// Euler transformation at internal vertex `v` whose lines are exactly
/// `a -> v` (`l`, `a` external or internal), `i beta -> v` (`n`) and
/// `v -> -i beta` (`r`). The result carries `a -> v` (`n`), `i beta -> v`
/// (`l`), `v -> -i beta` (`4s - l - n - r`) and the outside factor
/// `(a + i beta)^{2s-l-r}` as the line `a -> -i beta` with exponent
/// `l + r - 2s`.
pub fn euler_step(d: &Diagram, v: &str) -> Result<(Diagram, RewriteStep)> {
    let d = d.canonical();
    internal(&d, v, "Euler transformation")?;
    let inc = d.incident(v);
    if inc.len() != 3 {
        return Err(not_applicable("Euler transformation", v, &format!("needs three lines, found {}", inc.len())));
    }
    let mut free = None;
    let mut plus = None;
    let mut minus = None;
    for e in &inc {
        let (src, dst) = (d.kind(&e.from)?, d.kind(&e.to)?);
        match (e.to == v, src, dst) {
            (true, VertexKind::FixedPlus, _) => plus = Some((e.from.clone(), e.exp.clone())),
            (false, _, VertexKind::FixedMinus) => minus = Some((e.to.clone(), e.exp.clone())),
            (true, VertexKind::External | VertexKind::Internal, _) if e.from != v => {
                free = Some((e.from.clone(), e.exp.clone()))
            }
            _ => {}
        }
    }
    let (Some((a, l)), Some((p, n)), Some((m, r))) = (free, plus, minus) else {
        return Err(not_applicable(
            "Euler transformation",
            v,
            "needs lines from a free point, from i beta and to -i beta",
        ));
    };
    let delta = euler_coefficient(&l, &n, &r);
    let mut out = d.clone();
    out.edges.retain(|e| e.from != v && e.to != v);
    let four_s = &s2() + &s2();
    out.edges.push(Edge { from: a.clone(), to: v.into(), exp: n.clone() });
    out.edges.push(Edge { from: p, to: v.into(), exp: l.clone() });
    out.edges.push(Edge { from: v.into(), to: m.clone(), exp: &(&(&four_s - &l) - &n) - &r });
    out.edges.push(Edge { from: a, to: m, exp: &(&l + &r) - &s2() });
    out.prefactor = out.prefactor.times(&delta);
    let step = RewriteStep { rule: RewriteRule::Euler, vertex: v.into(), coefficient_delta: delta };
    Ok((out.canonical(), step))
}

pub fn apply_chain_rule(d: &Diagram, v: &str) -> Result<Diagram> {
    chain_step(d, v).map(|x| x.0)
}

pub fn apply_euler_transform(d: &Diagram, v: &str) -> Result<Diagram> {
    euler_step(d, v).map(|x| x.0)
}

/// Applies `rule` at `v`.
pub fn rewrite(d: &Diagram, rule: RewriteRule, v: &str) -> Result<(Diagram, RewriteStep)> {
    match rule {
        RewriteRule::Chain => chain_step(d, v),
        RewriteRule::Euler => euler_step(d, v),
    }
}

/// Re-applies a recorded step and checks that it contributes the recorded
/// coefficient.
pub fn replay(step: &RewriteStep, pre: &Diagram) -> Result<Diagram> {
    let (post, again) = rewrite(pre, step.rule, &step.vertex)?;
    if again.coefficient_delta.canonical() != step.coefficient_delta.canonical() {
        return Err(Error::NotApplicable(format!(
            "replaying {:?} at '{}' gives a different coefficient",
            step.rule, step.vertex
        )));
    }
    Ok(post)
}
