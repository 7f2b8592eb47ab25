//! Symbolic half-plane diagrams: build one, rewrite it with the chain rule
//! and the Euler transformation, replay the scripted derivation of K on 1,
//! and check rewritten diagrams numerically.

use sl2_reflect::diagrams::{apply_chain_rule, context, evaluate_diagram, ex, replay_fig3, Diagram, Symbol, VertexKind};
use sl2_reflect::halfplane::{HPoint, HQuadGrid};
use sl2_reflect::{c64, Result, SpinParams};

fn main() -> Result<()> {
    let p = SpinParams::new(1.0, 1.0, 1.0)?;
    let chain = Diagram::new()
        .with_vertex("z", VertexKind::External)
        .with_vertex("w", VertexKind::External)
        .with_vertex("v", VertexKind::Internal)
        .with_edge("z", "v", ex("lam"))
        .with_edge("v", "w", ex("rho"));
    let merged = apply_chain_rule(&chain, "v")?;
    println!("after the chain rule:\n{}", merged.to_json()?);

    let grid = HQuadGrid::polar(p.s)?;
    let ctx = context(&p)
        .assign(Symbol::Lam, c64(1.5, 0.0))
        .assign(Symbol::Rho, c64(1.2, 0.0))
        .point("z", HPoint::new(c64(0.5, 2.0))?)
        .point("w", HPoint::new(c64(-1.0, 0.7))?);
    let before = evaluate_diagram(&chain, &ctx, &grid)?;
    let after = evaluate_diagram(&merged, &ctx, &grid)?;
    println!("value before {before:.10}, after {after:.10}");

    // the scripted derivation: chain rule, then Euler transformation
    let r = replay_fig3()?;
    for step in &r.trace {
        println!("{:?} at '{}': coefficient {}", step.rule, step.vertex, step.coefficient_delta);
    }
    let ctx = context(&p).assign(Symbol::X, c64(0.3, 0.0)).point("z", HPoint::new(c64(0.0, 2.0))?);
    println!("final diagram value {:.10}", evaluate_diagram(r.result(), &ctx, &grid)?);
    Ok(())
}
