//! Exact operator algebra on polynomials and the closed-form Möbius actions
//! of exponentiated generators.

pub mod diffop;
pub mod generators;
pub mod intertwine;
pub mod matrix;
pub mod mobius;
pub mod poly;

pub use diffop::{apply_diffop, DiffOp};
pub use generators::{
    casimir_value, hamiltonian, hamiltonian_via_j, i_operator, n_generators, n_operator, Generators,
};
pub use matrix::{
    check_b_structure, check_keq_divisibility, check_reflection_kmatrix, check_yang_baxter, k_matrix,
    keq_products, kmatrix_residual, lax, lax_expanded, lax_factorized, monodromy, r_matrix, OpMatrix,
};
pub use mobius::{check_n2_identity, exp_generator, exp_series, GeneratorKind, MobiusWeight};
pub use poly::{Poly, DEFAULT_CAP};
pub use intertwine::check_intertwining;
