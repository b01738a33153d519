//! Complex dense matrices, linear and antilinear operators, and the spectral
//! primitives the rest of the crate is built on.
//!
//! An antilinear operator is stored as its matrix part `M` together with a
//! kind tag; it acts as `x ↦ M·conj(x)`. Composition follows four rules:
//!
//! | outer ∘ inner | kind       | matrix          |
//! |---------------|------------|-----------------|
//! | L ∘ L'        | linear     | `M_L · M_L'`    |
//! | L ∘ A         | antilinear | `M_L · M_A`     |
//! | A ∘ L         | antilinear | `M_A · conj(M_L)` |
//! | A ∘ A'        | linear     | `M_A · conj(M_A')` |

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{ComplexField, Schur, SymmetricEigen, SVD};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frames::PtFrame;
use crate::scalar::{c_real, ComplexMatrix, ComplexVector, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Linear,
    Antilinear,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Linear => f.write_str("linear"),
            OperatorKind::Antilinear => f.write_str("antilinear"),
        }
    }
}

/// A square linear or antilinear operator on `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T: Real> {
    kind: OperatorKind,
    matrix: ComplexMatrix<T>,
}

impl<T: Real> Operator<T> {
    pub fn new(kind: OperatorKind, matrix: ComplexMatrix<T>) -> Result<Self> {
        check_square(&matrix)?;
        ensure_finite(&matrix)?;
        Ok(Self { kind, matrix })
    }

    pub fn linear(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::new(OperatorKind::Linear, matrix)
    }

    pub fn antilinear(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::new(OperatorKind::Antilinear, matrix)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            kind: OperatorKind::Linear,
            matrix: ComplexMatrix::identity(n, n),
        }
    }

    /// Entrywise complex conjugation, the canonical time reversal.
    pub fn conjugation(n: usize) -> Self {
        Self {
            kind: OperatorKind::Antilinear,
            matrix: ComplexMatrix::identity(n, n),
        }
    }

    pub(crate) fn from_parts(kind: OperatorKind, matrix: ComplexMatrix<T>) -> Self {
        debug_assert!(matrix.is_square());
        Self { kind, matrix }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn is_linear(&self) -> bool {
        self.kind == OperatorKind::Linear
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn expect_kind(&self, expected: OperatorKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }

    pub fn apply(&self, v: &ComplexVector<T>) -> Result<ComplexVector<T>> {
        check_dim(self.dim(), v.len())?;
        Ok(match self.kind {
            OperatorKind::Linear => &self.matrix * v,
            OperatorKind::Antilinear => &self.matrix * v.conjugate(),
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Operator<T>) -> Result<Operator<T>> {
        check_dim(self.dim(), inner.dim())?;
        let matrix = match self.kind {
            OperatorKind::Linear => &self.matrix * &inner.matrix,
            OperatorKind::Antilinear => &self.matrix * inner.matrix.conjugate(),
        };
        let kind = if self.kind == inner.kind {
            OperatorKind::Linear
        } else {
            OperatorKind::Antilinear
        };
        Ok(Operator { kind, matrix })
    }

    /// Conjugate transpose. Defined for linear operators only.
    pub fn dirac_adjoint(&self) -> Result<Operator<T>> {
        self.expect_kind(OperatorKind::Linear)?;
        Ok(Operator {
            kind: OperatorKind::Linear,
            matrix: self.matrix.adjoint(),
        })
    }
}

pub fn apply<T: Real>(op: &Operator<T>, v: &ComplexVector<T>) -> Result<ComplexVector<T>> {
    op.apply(v)
}

/// `a ∘ b`.
pub fn compose<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<Operator<T>> {
    a.compose(b)
}

pub fn dirac_adjoint<T: Real>(a: &Operator<T>) -> Result<Operator<T>> {
    a.dirac_adjoint()
}

/// The frame transpose `T·A⁺·T`. For entrywise-conjugation `T` this is the
/// plain matrix transpose.
pub fn t_transpose<T: Real>(a: &Operator<T>, frame: &PtFrame<T>) -> Result<Operator<T>> {
    a.expect_kind(OperatorKind::Linear)?;
    check_dim(frame.dim(), a.dim())?;
    let t = frame.t();
    t.compose(&a.dirac_adjoint()?)?.compose(t)
}

/// Full eigensystem of a diagonalizable matrix, sorted by (re, im).
#[derive(Debug, Clone)]
pub struct EigenSystem<T: Real> {
    values: Vec<Complex<T>>,
    vectors: ComplexMatrix<T>,
    condition: T,
}

impl<T: Real> EigenSystem<T> {
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Eigenvectors as unit-norm columns, aligned with [`values`](Self::values).
    pub fn vectors(&self) -> &ComplexMatrix<T> {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> ComplexVector<T> {
        self.vectors.column(i).into_owned()
    }

    /// 2-norm condition number of the eigenvector matrix.
    pub fn condition(&self) -> T {
        self.condition
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Eigenvalues only, sorted by (re, im). No diagonalizability check.
pub fn eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<Complex<T>>> {
    check_square(m)?;
    ensure_finite(m)?;
    let (_, t) = schur(m)?;
    let mut values: Vec<_> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    values.sort_by(cmp_complex);
    Ok(values)
}

/// Eigendecomposition `M = V·diag(λ)·V⁻¹` with unit-norm eigenvectors.
///
/// Fails with [`Error::DefectiveSpectrum`] when the eigenvector matrix has
/// condition number above [`Real::MAX_CONDITION`], and with
/// [`Error::EigenResidual`] if any pair misses `‖Mv − λv‖ ≤ tol·‖M‖`.
pub fn eigendecompose<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<EigenSystem<T>> {
    check_square(m)?;
    ensure_finite(m)?;
    let n = m.nrows();
    let (q, t) = schur(m)?;
    let y = triangular_eigenvectors(&t);
    let mut vectors = q * y;
    for mut col in vectors.column_iter_mut() {
        let norm = col.norm();
        if norm > T::zero() {
            col.unscale_mut(norm);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cmp_complex(&t[(a, a)], &t[(b, b)]));
    let values: Vec<_> = order.iter().map(|&i| t[(i, i)]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, k| vectors[(r, order[k])]);

    let condition = condition_number(&vectors);
    if !(condition <= T::MAX_CONDITION) {
        return Err(Error::DefectiveSpectrum {
            condition: condition.as_f64(),
        });
    }

    let scale = m.norm();
    for (k, &lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        let residual = (m * v - v * lambda).norm();
        if residual > tol * scale {
            return Err(Error::EigenResidual {
                residual: residual.as_f64(),
            });
        }
    }

    Ok(EigenSystem {
        values,
        vectors,
        condition,
    })
}

fn schur<T: Real>(m: &ComplexMatrix<T>) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    let max_iter = 1000 * m.nrows().max(1);
    let decomposition = Schur::try_new(m.clone(), T::EPSILON, max_iter).ok_or(Error::NoConvergence)?;
    Ok(decomposition.unpack())
}

// Solves (T - t_kk I) y = 0 by back-substitution for every k. Tiny pivots
// are replaced by eps·‖T‖, which only matters for (near-)repeated
// eigenvalues and leaves the residual at roundoff level.
fn triangular_eigenvectors<T: Real>(t: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = t.nrows();
    let mut small = T::EPSILON * t.norm();
    if small == T::zero() {
        small = T::EPSILON;
    }
    let mut y = ComplexMatrix::<T>::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        y[(k, k)] = Complex::one();
        for i in (0..k).rev() {
            let mut acc = Complex::<T>::zero();
            for j in (i + 1)..=k {
                acc += t[(i, j)] * y[(j, k)];
            }
            let mut pivot = t[(i, i)] - lambda;
            if pivot.modulus() < small {
                pivot = c_real(small);
            }
            y[(i, k)] = -acc / pivot;
        }
    }
    y
}

/// Total order on complex numbers: real part, then imaginary part.
pub fn cmp_complex<T: Real>(a: &Complex<T>, b: &Complex<T>) -> Ordering {
    a.re
        .partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Spectral power `U·diag(λᵖ)·U⁺` of a Hermitian positive definite matrix.
pub fn hermitian_power<T: Real>(m: &ComplexMatrix<T>, p: T, tol: T) -> Result<ComplexMatrix<T>> {
    let (values, vectors) = hermitian_spectrum(m, tol)?;
    let largest = values.iter().fold(T::zero(), |acc, &v| acc.max(ComplexField::abs(v)));
    let smallest = values.iter().fold(T::max_value().unwrap_or(largest), |acc, &v| acc.min(v));
    if !(smallest > tol * largest) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: smallest.as_f64(),
        });
    }
    let powered = ComplexMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, k| {
        vectors[(r, k)].scale(values[k].powf(p))
    });
    Ok(powered * vectors.adjoint())
}

/// Real spectrum (ascending) and unitary eigenvectors of a Hermitian matrix.
pub fn hermitian_spectrum<T: Real>(
    m: &ComplexMatrix<T>,
    tol: T,
) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    check_square(m)?;
    ensure_finite(m)?;
    let residual = hermiticity_residual(m);
    if residual > tol * T::one().max(m.norm()) {
        return Err(Error::NotHermitian {
            residual: residual.as_f64(),
        });
    }
    let sym = (m + m.adjoint()).unscale(T::lit(2.0));
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(Ordering::Equal)
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let n = m.nrows();
    let vectors = ComplexMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    Ok((values, vectors))
}

/// `‖M − M⁺‖_F`.
pub fn hermiticity_residual<T: Real>(m: &ComplexMatrix<T>) -> T {
    (m - m.adjoint()).norm()
}

/// Largest singular value.
pub fn operator_norm<T: Real>(m: &ComplexMatrix<T>) -> T {
    if m.is_empty() {
        return T::zero();
    }
    SVD::new(m.clone(), false, false)
        .singular_values
        .iter()
        .fold(T::zero(), |acc, &s| acc.max(s))
}

/// 2-norm condition number; infinite for singular input.
pub fn condition_number<T: Real>(m: &ComplexMatrix<T>) -> T {
    if m.is_empty() {
        return T::one();
    }
    let sv = SVD::new(m.clone(), false, false).singular_values;
    let largest = sv.iter().fold(T::zero(), |acc, &s| acc.max(s));
    let smallest = sv.iter().fold(largest, |acc, &s| acc.min(s));
    if smallest > T::zero() {
        largest / smallest
    } else {
        T::max_value().unwrap_or(largest)
    }
}

/// Standard inner product `⟨x, y⟩ = Σ conj(xᵢ)·yᵢ`.
pub fn inner<T: Real>(x: &ComplexVector<T>, y: &ComplexVector<T>) -> Result<Complex<T>> {
    check_dim(x.len(), y.len())?;
    Ok(x.dotc(y))
}

/// Block-diagonal assembly.
pub fn block_diag<T: Real>(blocks: &[&ComplexMatrix<T>]) -> ComplexMatrix<T> {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((offset, offset), (k, k)).copy_from(b);
        offset += k;
    }
    out
}

/// Real matrix lifted to complex entries, row-major input.
pub fn from_real_rows<T: Real>(n: usize, rows: &[f64]) -> ComplexMatrix<T> {
    ComplexMatrix::from_row_iterator(n, rows.len() / n, rows.iter().map(|&x| c_real(T::lit(x))))
}

pub(crate) fn check_square<T: Real>(m: &ComplexMatrix<T>) -> Result<()> {
    if m.is_empty() {
        return Err(Error::Empty);
    }
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn ensure_finite<T: Real>(m: &ComplexMatrix<T>) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}
