//! Configuration, verification suites, tables and the tool subcommands
//! behind the `reflect` binary. Every entry point is a plain function so the
//! binary stays a thin argument parser.

pub mod config;
pub mod criteria;
pub mod report;
pub mod suites;
pub mod tables;
pub mod tools;

pub use config::{Config, GridConfig, ModelConfig, Tolerances};
pub use report::{Case, Report};
pub use suites::{run_verify, special_function_checks, Suite};
pub use tables::{emit_table, TableKind};
pub use tools::{
    diagram_eval, diagram_rewrite, eigenfn, parse_complex, parse_pairs, read_diagram, read_points, run_transform,
    Samples, TransformKind,
};

/// Process exit codes.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

/// Exit code for an error: configuration and input problems map to
/// [`EXIT_CONFIG`], anything else to [`EXIT_FAIL`].
pub fn exit_code(e: &crate::Error) -> u8 {
    match e {
        crate::Error::Config(_) | crate::Error::Parse { .. } | crate::Error::InvalidParams(_) => EXIT_CONFIG,
        _ => EXIT_FAIL,
    }
}
