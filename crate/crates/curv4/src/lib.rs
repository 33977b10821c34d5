//! Four-dimensional Riemannian curvature algebra and verification workbench.
//!
//! The crate has four layers:
//!
//! * [`curv_algebra`] — pointwise tensor algebra: Weyl decomposition into
//!   self-dual / anti-self-dual blocks, Kulkarni-Nomizu products, the
//!   curvature operator on two-forms, spectra and norms. Generic over the
//!   scalar field: `f64` or exact rationals ([`scalar::Exact`]).
//! * [`pinching`] — the sharp spectral and traceless-Ricci inequalities and
//!   the pointwise pinching conditions, with margin and equality-case
//!   reporting plus a deterministic fuzzing engine.
//! * [`soliton_catalog`] — closed-form model gradient shrinking solitons
//!   (flat space, round sphere, two cylinders, the complex projective
//!   plane) with exact curvature and potential data, identity verification,
//!   and chart export.
//! * [`chart_geometry`] — an independent finite-difference oracle that
//!   recovers curvature, the Cotton tensor, and drifted Laplacians from raw
//!   coordinate-metric grids, and fits scalar-curvature growth hypotheses.
//!
//! The `curv4` binary exposes all of it behind a small CLI; see the
//! `examples/` directory for one runnable example per capability.

// tensor formulas are written with explicit index loops on purpose: the
// indices carry the mathematical meaning
#![allow(clippy::needless_range_loop)]

pub mod chart_geometry;
pub mod cli;
pub mod curv_algebra;
pub mod pinching;
pub mod report;
pub mod scalar;
pub mod soliton_catalog;

pub use scalar::{Exact, Scalar};
