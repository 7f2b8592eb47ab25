//! Eigenfunctions, the spectral measure, orthogonality with a radial
//! cut-off, completeness, and the bridge to the index hypergeometric
//! transform on the half-line.

pub mod completeness;
pub mod cutoff;
pub mod eigen;
pub mod integrals;
pub mod measure;
pub mod sample;
pub mod transform;

pub use cutoff::{
    cutoff_asymptotic, cutoff_gap_averaged, cutoff_profile, scalar_product_cutoff, scalar_product_cutoff_with, CutoffRule,
};
pub use eigen::{
    apply_hamiltonian, apply_hamiltonian_strict, apply_hamiltonian_w, eigen_residual, from_w, psi, scattered_points,
    to_w, Eigenfunction, HalfLineEigenfunction,
};
pub use integrals::{dbw_integral, dbw_integral_quadrature, gamma_integral_i1, gamma_integral_i1_quadrature};
pub use measure::{delta_coefficient, orthogonality_coefficient, SpectralMeasure};
pub use sample::{SampleRow, SpectralSample};
pub use completeness::{
    completeness_integral, completeness_integrand, completeness_kernel, completeness_target, decay_certificate,
    growth_rate, predicted_delta, DecayCertificate,
};
pub use transform::{
    half_line_norm_sq, index_transform_j, mb_argument, mb_closed_side, mb_integral_side, mellin_barnes_identity_check,
    psi_phi_residual, transform_t, transform_u, transform_udag, transform_udag_u, udag_function, HalfLineFn, HalfLineRule, MbParams,
    UTransform,
};
