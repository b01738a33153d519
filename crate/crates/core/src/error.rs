use thiserror::Error;

use crate::frames::FrameReport;
use crate::linops::OperatorKind;

/// Errors produced by the library. Numeric payloads are widened to `f64`
/// so the error type does not depend on the scalar parameter.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("empty matrix")]
    Empty,

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("expected a {expected} operator, got a {found} one")]
    KindMismatch {
        expected: OperatorKind,
        found: OperatorKind,
    },

    #[error("spectrum is numerically defective (eigenvector condition number {condition:.3e})")]
    DefectiveSpectrum { condition: f64 },

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("eigenpair residual {residual:.3e} exceeds tolerance")]
    EigenResidual { residual: f64 },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("pair-swap frames need an even positive dimension, got {0}")]
    OddDimension(usize),

    #[error("P is not an involution (||P^2 - I|| = {residual:.3e})")]
    NotInvolution { residual: f64 },

    #[error("P is the identity operator; a PT-frame requires P != I")]
    IsIdentity,

    #[error("P has non-real entries (max |Im| = {max_imag:.3e}); conjugation-T would not commute with it")]
    NonRealEntries { max_imag: f64 },

    #[error("zero vector")]
    ZeroVector,

    #[error("vector is not an eigenstate of PT (residual {residual:.3e})")]
    NotPtEigenstate { residual: f64 },

    #[error("Hamiltonian is not PT-symmetric (residual {residual:.3e})")]
    NotPtSymmetric { residual: f64 },

    #[error("PT-symmetry is not unbroken")]
    NotUnbroken,

    #[error(
        "state is numerically self-orthogonal under the PT form \
         (relative indefinite norm {indefinite_norm:.3e}, metric condition {metric_condition:.3e}); \
         exceptional point"
    )]
    SelfOrthogonal {
        indefinite_norm: f64,
        metric_condition: f64,
    },

    #[error("aligned states are not PT-orthonormal (Gram residual {residual:.3e})")]
    GramDefect { residual: f64 },

    #[error("constructed operators do not form a valid frame: {0}")]
    FrameInvalid(FrameReport),

    #[error("C does not commute with H (||[C, H]|| = {residual:.3e})")]
    CommutatorViolation { residual: f64 },

    #[error("block specification is empty")]
    EmptySpec,

    #[error("block specification mixes PT and CPT frames")]
    MixedFrameKinds,

    #[error("model parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),

    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),

    #[error("cos(phi) = {cos_phi:.3e} is at or below tolerance (exceptional point)")]
    ExceptionalPoint { cos_phi: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
