//! Metric Jordan algebras: structure constants, structure theory
//! (nilpotency, radicals, spectral and Peirce decompositions), the Jordan
//! Levi-Civita connection with its curvature and Ricci tensors, and
//! Jordan-Einstein deformations of the classical simple algebras.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`.

pub mod algebra;
pub mod catalog;
pub mod classical;
pub mod einstein;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod random;
pub mod scalar;
pub mod structure;
pub mod validation;

pub use algebra::{Algebra, Element, LinearOperator};
pub use classical::{build_classical, ClassicalAlgebra, ClassicalSpec, Family, Invariants};
pub use einstein::{
    canonical_metric, deform_to_einstein, einstein_constant_sign, nilpotent_no_einstein_certificate, ric0_check,
    DeformationResult, NilpotentCertificate,
};
pub use error::{JordanError, Result};
pub use geometry::{
    check_flat_lssa, curvature, jordan_sectional, levi_civita, moment_map, ricci, ricci_in_basis,
    sample_nonpositivity, Connection, Curvature4, InnerProduct, MomentMap, RicciData,
};
pub use linalg::Matrix;
pub use scalar::Scalar;
pub use structure::{
    jordan_frame, killing_form, nilpotency, peirce_decompose, rank_and_trace, spectral_decompose, tau_form,
    BilinearForm, PeirceData, SpectralDecomposition,
};
pub use validation::{Check, ValidationReport};

pub type Algebra64 = Algebra<f64>;
pub type Algebra32 = Algebra<f32>;
pub type Element64 = Element<f64>;
pub type Element32 = Element<f32>;
pub type Matrix64 = Matrix<f64>;
pub type InnerProduct64 = InnerProduct<f64>;
pub type RicciData64 = RicciData<f64>;
