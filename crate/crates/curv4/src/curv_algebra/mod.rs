//! Pointwise tensor algebra for four-dimensional curvature: Weyl
//! decomposition into self-dual and anti-self-dual parts, Kulkarni-Nomizu
//! products, the curvature operator on two-forms in the fixed Lambda-plus /
//! Lambda-minus basis, spectra and norms.
//!
//! Everything here is a pure function on immutable values and is generic
//! over the scalar field (floating or exact rational).
//!
//! Conventions, fixed once for the whole crate:
//! * orthonormal-frame components; the round sphere has positive sectional
//!   curvature and `Ric_jl = sum_i R[i][j][i][l]`;
//! * the curvature operator acts on a two-form by
//!   `(Rm w)_ij = (1/2) R_ijkl w_kl`;
//! * norms and inner products of Lambda2 blocks use the eigenvalue/trace
//!   convention (`|W|^2 = sum w_i^2`, `<A,B> = tr(A B)`); the componentwise
//!   tensor contraction differs by an exact factor of 4 and is exposed
//!   separately as [`component_norm2`].

mod basis;
mod ops;
mod types;

pub use basis::{hodge_projectors, hodge_star, Bivector, Lambda2Basis};
pub use ops::{
    apply_to_bivector, as_lambda2_operator, block_inner, block_norms, component_norm2,
    curvature_from_operator, kulkarni_nomizu, recompose, recompose_from_operator, schouten,
    spectrum3, weyl_decompose, BlockNorms, SCHOUTEN_TRACE_COEFF_N4, WEYL_RICCI_COEFF_N4,
    WEYL_SCALAR_COEFF_N4,
};
pub use types::{
    AlgCurvTensor, BilinearRole, Block3, BlockKind, CurvDecomp, Duality, Lambda2Operator,
    Spectrum3, SymBilinear4,
};

use thiserror::Error;

/// Errors raised by the curvature algebra operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvError {
    /// Input tensor violates a curvature symmetry beyond tolerance.
    /// Inputs are rejected, never symmetrized silently.
    #[error("input violates curvature symmetry ({which}): residual {residual}")]
    NonSymmetricInput { which: &'static str, residual: f64 },
    /// Metric has an eigenvalue at or below zero.
    #[error("metric is not positive definite")]
    DegenerateMetric,
    /// Gram matrix of the supplied bivector basis deviates from 2*Id.
    #[error("bivector basis is not orthogonal: gram residual {residual}")]
    BasisNotOrthogonal { residual: f64 },
    /// Block inner product between a self-dual and an anti-self-dual block.
    #[error("duality mismatch between blocks")]
    DualityMismatch,
    /// A tensor required to be trace-free has nonzero trace.
    #[error("tensor is not trace-free: |trace| = {trace}")]
    NotTraceFree { trace: f64 },
}
