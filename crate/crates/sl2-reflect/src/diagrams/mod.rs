//! Symbolic calculus of half-plane diagrams with exact coefficient
//! bookkeeping, and a numeric evaluator for diagrams with up to two
//! integrated vertices.

pub mod diagram;
pub mod eval;
pub mod expr;
pub mod pipelines;
pub mod rewrite;

pub use diagram::{Diagram, Edge, Prefactor, Vertex, VertexKind};
pub use eval::{evaluate_closed, evaluate_diagram, evaluate_prefactor, EvalContext};
pub use expr::{ex, parse_exponent, Coef, ExponentExpr, Symbol};
pub use pipelines::{
    context, delta_sequence_integral, extrapolate_to_zero, fig3_expected_prefactor, hyp2f1_diagram, hyp2f1_prefactor,
    orthogonality_collected_prefactor, orthogonality_delta_check, orthogonality_displayed_factors,
    orthogonality_outer_prefactor, orthogonality_pipeline, orthogonality_replay, orthogonality_start_diagram,
    reflection_kernel_diagram, reflection_on_one_diagram, replay_fig3, smooth_bump, star_exponents, w_abc_identity,
    w_abc_sides, DeltaCheck, OrthogonalityPipeline, Replay, WAbcCheck,
};
pub use rewrite::{
    apply_chain_rule, apply_euler_transform, chain_coefficient, chain_step, euler_coefficient, euler_step, replay,
    rewrite, RewriteRule, RewriteStep,
};
