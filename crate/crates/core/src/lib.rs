//! PT-frames and CPT-frames for finite-dimensional non-Hermitian Hamiltonians.
//!
//! Everything is generic over the real scalar `T` ([`Real`], implemented for
//! `f32` and `f64`). The `*64` / `*32` aliases below fix the precision.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compose;
pub mod cpt;
pub mod error;
pub mod frames;
pub mod linops;
pub mod models;
pub mod scalar;
pub mod symmetry;

pub use compose::{direct_sum, doubling, tensor_frames, tensor_hamiltonians, tensor_pt_frames, Block, BlockFrame, BlockSpec, Composite};
pub use cpt::{
    assemble_c, build_c, cpt_adjoint, cpt_inner, cpt_norm, hermitize, metric_roots, norm_bounds, normalize_indefinite, pt_inner,
    CptResult, Sign, SignedState,
};
pub use error::{Error, Result};
pub use frames::{
    frame_from_involution, pair_swap_frame, validate_cpt_frame, validate_pt_frame, Axiom, CptFrame, FrameReport,
    PtFrame, Violation,
};
pub use linops::{
    apply, compose, dirac_adjoint, eigendecompose, eigenvalues, hermitian_power, t_transpose, EigenSystem, Operator,
    OperatorKind,
};
pub use models::{build_model, classify_model, closed_form_c, closed_form_spectrum, ClosedFormSpectrum, ModelSpec, Regime, TwoLevel};
pub use scalar::{cis, ComplexMatrix, ComplexVector, Real};
pub use symmetry::{
    classify_2x2, classify_symmetry, is_pt_symmetric, phase_align, AlignedState, BrokenPair, Classification,
    StructuralForm, SymmetryReport, TwoByTwoClass, Warning,
};

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type ComplexMatrix32 = ComplexMatrix<f32>;
pub type ComplexVector64 = ComplexVector<f64>;
pub type ComplexVector32 = ComplexVector<f32>;
pub type Operator64 = Operator<f64>;
pub type Operator32 = Operator<f32>;
pub type PtFrame64 = PtFrame<f64>;
pub type PtFrame32 = PtFrame<f32>;
pub type CptFrame64 = CptFrame<f64>;
pub type CptFrame32 = CptFrame<f32>;
pub type SymmetryReport64 = SymmetryReport<f64>;
pub type CptResult64 = CptResult<f64>;
