use std::io;
use std::path::PathBuf;

use cpt_core::{Error, FrameReport};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_AXIOM: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("invalid document {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("frame axioms violated: {0}")]
    Axioms(FrameReport),

    #[error("{context}: {source}")]
    Core { context: String, source: Error },

    #[error("write failed: {0}")]
    Output(#[from] io::Error),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl From<Error> for CliError {
    fn from(source: Error) -> Self {
        CliError::Core {
            context: "error".into(),
            source,
        }
    }
}

impl CliError {
    pub fn core(context: impl Into<String>, source: Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Io { .. } | CliError::Output(_) | CliError::Csv(_) => EXIT_IO,
            CliError::Axioms(_) => EXIT_AXIOM,
            CliError::Core { source, .. } => core_exit_code(source),
        }
    }
}

pub fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::DimensionMismatch { .. }
        | Error::NotSquare { .. }
        | Error::Empty
        | Error::NonFinite
        | Error::KindMismatch { .. }
        | Error::OddDimension(_)
        | Error::NonRealEntries { .. }
        | Error::ZeroVector
        | Error::EmptySpec
        | Error::MixedFrameKinds
        | Error::ZeroParameter(_)
        | Error::InvalidParameter(_) => EXIT_USAGE,
        Error::NotInvolution { .. }
        | Error::IsIdentity
        | Error::NotHermitian { .. }
        | Error::NotPtEigenstate { .. }
        | Error::NotPtSymmetric { .. }
        | Error::NotUnbroken
        | Error::GramDefect { .. }
        | Error::FrameInvalid(_)
        | Error::CommutatorViolation { .. } => EXIT_AXIOM,
        Error::DefectiveSpectrum { .. }
        | Error::NoConvergence
        | Error::EigenResidual { .. }
        | Error::NotPositiveDefinite { .. }
        | Error::SelfOrthogonal { .. }
        | Error::ExceptionalPoint { .. } => EXIT_NUMERICAL,
    }
}

/// Short stable identifier used in scan status cells.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::NotSquare { .. } => "not-square",
        Error::Empty => "empty",
        Error::NonFinite => "non-finite",
        Error::KindMismatch { .. } => "kind-mismatch",
        Error::DefectiveSpectrum { .. } => "defective-spectrum",
        Error::NoConvergence => "no-convergence",
        Error::EigenResidual { .. } => "eigen-residual",
        Error::NotHermitian { .. } => "not-hermitian",
        Error::NotPositiveDefinite { .. } => "not-positive-definite",
        Error::OddDimension(_) => "odd-dimension",
        Error::NotInvolution { .. } => "not-involution",
        Error::IsIdentity => "p-is-identity",
        Error::NonRealEntries { .. } => "non-real-p",
        Error::ZeroVector => "zero-vector",
        Error::NotPtEigenstate { .. } => "not-pt-eigenstate",
        Error::NotPtSymmetric { .. } => "not-pt-symmetric",
        Error::NotUnbroken => "not-unbroken",
        Error::SelfOrthogonal { .. } => "self-orthogonal",
        Error::GramDefect { .. } => "gram-defect",
        Error::FrameInvalid(_) => "frame-invalid",
        Error::CommutatorViolation { .. } => "commutator-violation",
        Error::EmptySpec => "empty-spec",
        Error::MixedFrameKinds => "mixed-frame-kinds",
        Error::ZeroParameter(_) => "zero-parameter",
        Error::InvalidParameter(_) => "invalid-parameter",
        Error::ExceptionalPoint { .. } => "exceptional-point",
    }
}
