//! Scalar abstraction shared by every module.
//!
//! All numerics are written against [`Real`], so the same code runs in `f64`
//! (the default, used by the CLI) and `f32`. Complex entries are
//! [`num_complex::Complex<T>`], which nalgebra treats as a `ComplexField`.

use std::fmt::LowerExp;

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar type usable as the component type of complex matrices.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + LowerExp {
    /// Default tolerance for structural axioms and spectral residuals.
    const DEFAULT_TOL: Self;
    /// Largest eigenvector-matrix (or metric) condition number accepted
    /// before a spectrum is treated as defective.
    const MAX_CONDITION: Self;
    /// Unit roundoff.
    const EPSILON: Self;

    /// Converts an `f64` literal. Panics only for values the type cannot
    /// represent at all, which never happens for the constants used here.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const DEFAULT_TOL: Self = 1e-10;
    const MAX_CONDITION: Self = 1e8;
    const EPSILON: Self = f64::EPSILON;
}

impl Real for f32 {
    const DEFAULT_TOL: Self = 1e-4;
    const MAX_CONDITION: Self = 1e4;
    const EPSILON: Self = f32::EPSILON;
}

/// Dense complex matrix; the carrier for every operator in the crate.
pub type ComplexMatrix<T> = DMatrix<Complex<T>>;

/// Dense complex column vector.
pub type ComplexVector<T> = DVector<Complex<T>>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn c_real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// `e^{i angle}`.
#[inline]
pub fn cis<T: Real>(angle: T) -> Complex<T> {
    let (s, co) = angle.sin_cos();
    Complex::new(co, s)
}
