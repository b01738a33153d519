//! The indefinite PT form, synthesis of `C` from an unbroken eigensystem,
//! the CPT inner product and adjoint, and Hermitization.
//!
//! Given PT-fixed eigenstates `φₙ` normalized so that the bilinear form
//! `(φₘ, φₙ) = ⟨Pφₘ, φₙ⟩` equals `sₙ·δₘₙ` with `sₙ = ±1`, the operator
//!
//! ```text
//! C = Σₙ φₙ·(Pφₙ)⁺
//! ```
//!
//! satisfies `C·φₖ = sₖ·φₖ`. Its metric `PC = PΦ·(PΦ)⁺` is Hermitian and
//! positive definite as soon as the states span the space, and the states
//! are orthonormal under `⟨x, y⟩_CPT = ⟨PC·x, y⟩`.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::frames::{validate_cpt_frame, CptFrame, PtFrame};
use crate::linops::{
    check_dim, condition_number, hermitian_power, operator_norm, Operator, OperatorKind,
};
use crate::scalar::{c_real, ComplexMatrix, ComplexVector, Real};
use crate::symmetry::{classify_symmetry, AlignedState, Classification};

/// Sign of the indefinite norm `(φ, φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<T: Real>(x: T) -> Self {
        if x < T::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignedState<T: Real> {
    pub energy: T,
    pub state: ComplexVector<T>,
    pub sign: Sign,
}

/// Output of [`build_c`].
#[derive(Debug, Clone)]
pub struct CptResult<T: Real> {
    pub cpt: CptFrame<T>,
    /// Sorted by energy; `C·φₙ = sₙ·φₙ`.
    pub states: Vec<SignedState<T>>,
    /// `‖Gram_CPT − I‖_F` over the states.
    pub gram_residual: T,
    /// `‖[C, H]‖_F`.
    pub commutator_residual: T,
    /// Condition number of the metric `PC`.
    pub metric_condition: T,
}

impl<T: Real> CptResult<T> {
    pub fn c(&self) -> &ComplexMatrix<T> {
        self.cpt.c().matrix()
    }

    /// States as columns.
    pub fn state_matrix(&self) -> ComplexMatrix<T> {
        let cols: Vec<_> = self.states.iter().map(|s| s.state.clone()).collect();
        ComplexMatrix::from_columns(&cols)
    }
}

/// The indefinite form `(u, v) = ⟨P·u, v⟩`.
pub fn pt_inner<T: Real>(u: &ComplexVector<T>, v: &ComplexVector<T>, frame: &PtFrame<T>) -> Result<Complex<T>> {
    check_dim(frame.dim(), u.len())?;
    check_dim(u.len(), v.len())?;
    Ok((frame.p().matrix() * u).dotc(v))
}

/// Scales a PT-fixed vector to `(φ, φ) = ±1`.
pub fn normalize_indefinite<T: Real>(
    v: &ComplexVector<T>,
    frame: &PtFrame<T>,
    tol: T,
) -> Result<(ComplexVector<T>, Sign)> {
    let norm_sq = v.norm_squared();
    if norm_sq == T::zero() {
        return Err(Error::ZeroVector);
    }
    let drift = (frame.pt().apply(v)? - v).norm();
    if drift > tol * norm_sq.sqrt() {
        return Err(Error::NotPtEigenstate {
            residual: drift.as_f64(),
        });
    }
    let form = pt_inner(v, v, frame)?.re;
    let magnitude = ComplexField::abs(form);
    if magnitude <= tol * norm_sq {
        return Err(Error::SelfOrthogonal {
            indefinite_norm: (magnitude / norm_sq).as_f64(),
            metric_condition: f64::INFINITY,
        });
    }
    Ok((v.unscale(magnitude.sqrt()), Sign::of(form)))
}

/// Synthesizes `C` for an unbroken PT-symmetric `h` and validates the
/// resulting CPT-frame.
///
/// Fails with [`Error::NotPtSymmetric`] / [`Error::NotUnbroken`] outside the
/// unbroken phase, [`Error::SelfOrthogonal`] when a state (or the metric)
/// degenerates near an exceptional point, [`Error::GramDefect`] when the
/// states cannot be made PT-orthonormal, and [`Error::FrameInvalid`] /
/// [`Error::CommutatorViolation`] if the assembled frame fails its checks.
pub fn build_c<T: Real>(h: &ComplexMatrix<T>, frame: &PtFrame<T>, tol: T) -> Result<CptResult<T>> {
    let report = classify_symmetry(h, frame, tol)?;
    match report.classification {
        Classification::NotApplicable => {
            return Err(Error::NotPtSymmetric {
                residual: report.pt_residual.as_f64(),
            })
        }
        Classification::Broken => return Err(Error::NotUnbroken),
        Classification::Unbroken => {}
    }
    let n = h.nrows();
    if report.aligned_states.len() != n {
        return Err(Error::NotUnbroken);
    }

    let mut states = Vec::with_capacity(n);
    let mut start = 0;
    let aligned = &report.aligned_states;
    while start < aligned.len() {
        let group = aligned[start].group;
        let end = aligned[start..]
            .iter()
            .position(|s| s.group != group)
            .map_or(aligned.len(), |k| start + k);
        if end - start == 1 {
            let (state, sign) = normalize_indefinite(&aligned[start].state, frame, tol)?;
            states.push(SignedState {
                energy: aligned[start].energy,
                state,
                sign,
            });
        } else {
            states.extend(orthogonalize_group(&aligned[start..end], frame, tol)?);
        }
        start = end;
    }

    let phi = ComplexMatrix::from_columns(&states.iter().map(|s| s.state.clone()).collect::<Vec<_>>());
    let p_phi = frame.p().matrix() * &phi;

    let metric_condition = {
        let k = condition_number(&p_phi);
        k * k
    };
    if !(metric_condition <= T::MAX_CONDITION) {
        let smallest = states
            .iter()
            .map(|s| T::one() / s.state.norm_squared())
            .fold(T::one(), |acc, x| acc.min(x));
        return Err(Error::SelfOrthogonal {
            indefinite_norm: smallest.as_f64(),
            metric_condition: metric_condition.as_f64(),
        });
    }

    let signs = ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
        n,
        states.iter().map(|s| c_real(s.sign.value::<T>())),
    ));
    let gram = p_phi.adjoint() * &phi;
    let scale = states
        .iter()
        .fold(T::one(), |acc, s| acc.max(s.state.norm_squared()));
    let pt_gram_residual = (&gram - &signs).norm();
    if pt_gram_residual > tol * scale {
        return Err(Error::GramDefect {
            residual: pt_gram_residual.as_f64(),
        });
    }

    let c_op = Operator::from_parts(OperatorKind::Linear, &phi * p_phi.adjoint());
    let validation = validate_cpt_frame(&c_op, frame, tol)?;
    if !validation.passed() {
        return Err(Error::FrameInvalid(validation));
    }
    let cpt = CptFrame::from_parts(c_op, frame.clone());

    let commutator_residual = cpt.commutator_residual(h)?;
    if commutator_residual > commutator_bound(&cpt, h, tol) {
        return Err(Error::CommutatorViolation {
            residual: commutator_residual.as_f64(),
        });
    }

    let pc = cpt.pc();
    let cpt_gram = (&pc * &phi).adjoint() * &phi;
    let gram_residual = (cpt_gram - ComplexMatrix::identity(n, n)).norm();

    Ok(CptResult {
        cpt,
        states,
        gram_residual,
        commutator_residual,
        metric_condition,
    })
}

/// `C = Σₙ φₙ·(Pφₙ)⁺` over the given states. Unvalidated; invariant under
/// `φₙ → −φₙ`.
pub fn assemble_c<T: Real>(states: &[ComplexVector<T>], frame: &PtFrame<T>) -> Result<ComplexMatrix<T>> {
    let n = frame.dim();
    let mut c = ComplexMatrix::zeros(n, n);
    for phi in states {
        check_dim(n, phi.len())?;
        c += phi * (frame.p().matrix() * phi).adjoint();
    }
    Ok(c)
}

// Diagonalizes the real symmetric PT form on a PT-fixed basis of one
// degenerate eigenspace. Real rotations keep every vector PT-fixed.
fn orthogonalize_group<T: Real>(
    group: &[AlignedState<T>],
    frame: &PtFrame<T>,
    tol: T,
) -> Result<Vec<SignedState<T>>> {
    let m = group.len();
    let mut form = DMatrix::<T>::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let value = pt_inner(&group[i].state, &group[j].state, frame)?.re;
            form[(i, j)] = value;
            form[(j, i)] = value;
        }
    }
    let eig = SymmetricEigen::new(form);
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let lambda = eig.eigenvalues[k];
        let magnitude = ComplexField::abs(lambda);
        if magnitude <= tol {
            return Err(Error::GramDefect {
                residual: magnitude.as_f64(),
            });
        }
        let mut state = ComplexVector::zeros(group[0].state.len());
        for (j, member) in group.iter().enumerate() {
            state += &member.state * c_real(eig.eigenvectors[(j, k)]);
        }
        out.push(SignedState {
            energy: group[0].energy,
            state: state.unscale(magnitude.sqrt()),
            sign: Sign::of(lambda),
        });
    }
    Ok(out)
}

fn commutator_bound<T: Real>(cpt: &CptFrame<T>, h: &ComplexMatrix<T>, tol: T) -> T {
    tol * T::one().max(operator_norm(cpt.c().matrix()) * h.norm())
}

/// `⟨x, y⟩_CPT = ⟨PC·x, y⟩`.
pub fn cpt_inner<T: Real>(u: &ComplexVector<T>, v: &ComplexVector<T>, cpt: &CptFrame<T>) -> Result<Complex<T>> {
    check_dim(cpt.dim(), u.len())?;
    check_dim(u.len(), v.len())?;
    Ok((cpt.pc() * u).dotc(v))
}

/// `‖x‖_CPT`.
pub fn cpt_norm<T: Real>(u: &ComplexVector<T>, cpt: &CptFrame<T>) -> Result<T> {
    Ok(cpt_inner(u, u, cpt)?.re.max(T::zero()).sqrt())
}

/// The factors `(‖CP‖^{-1/2}, ‖PC‖^{1/2})` bounding `‖x‖_CPT / ‖x‖`.
pub fn norm_bounds<T: Real>(cpt: &CptFrame<T>) -> (T, T) {
    let cp = cpt.c().matrix() * cpt.p().matrix();
    let lower = T::one() / operator_norm(&cp).sqrt();
    let upper = operator_norm(&cpt.pc()).sqrt();
    (lower, upper)
}

/// Adjoint with respect to the CPT inner product: `(PC)⁻¹·A⁺·(PC)`.
pub fn cpt_adjoint<T: Real>(a: &Operator<T>, cpt: &CptFrame<T>, tol: T) -> Result<Operator<T>> {
    a.expect_kind(OperatorKind::Linear)?;
    check_dim(cpt.dim(), a.dim())?;
    let pc = cpt.pc();
    let pc_inv = hermitian_power(&pc, -T::one(), tol)?;
    Ok(Operator::from_parts(
        OperatorKind::Linear,
        pc_inv * a.matrix().adjoint() * pc,
    ))
}

/// `((PC)^{1/2}, (PC)^{-1/2})`.
pub fn metric_roots<T: Real>(cpt: &CptFrame<T>, tol: T) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    let pc = cpt.pc();
    let half = T::lit(0.5);
    Ok((hermitian_power(&pc, half, tol)?, hermitian_power(&pc, -half, tol)?))
}

/// The similarity `h = (PC)^{1/2}·H·(PC)^{-1/2}`. Hermitian exactly when `H`
/// is symmetric in the frame sense.
pub fn hermitize<T: Real>(h: &ComplexMatrix<T>, cpt: &CptFrame<T>, tol: T) -> Result<ComplexMatrix<T>> {
    let residual = cpt.commutator_residual(h)?;
    if residual > commutator_bound(cpt, h, tol) {
        return Err(Error::CommutatorViolation {
            residual: residual.as_f64(),
        });
    }
    let (root, inv_root) = metric_roots(cpt, tol)?;
    Ok(root * h * inv_root)
}
