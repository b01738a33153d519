//! PT-frames `{P, T}` and CPT-frames `{C, P, T}`.
//!
//! A PT-frame is a linear involution `P ≠ I` and an antilinear involution `T`
//! that commute. A CPT-frame adds a linear involution `C` with `CPT = TPC`
//! such that `PC` is Hermitian positive definite. Constructors validate the
//! axioms; [`validate_pt_frame`] and [`validate_cpt_frame`] report every
//! violated axiom together with its residual.

use std::fmt;

use crate::error::{Error, Result};
use crate::linops::{
    check_dim, hermitian_spectrum, hermiticity_residual, operator_norm, Operator, OperatorKind,
};
use crate::scalar::{c_real, ComplexMatrix, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    PSquared,
    TSquared,
    PtCommute,
    PNotIdentity,
    CSquared,
    CptCommute,
    PcHermitian,
    PcPositiveDefinite,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::PSquared => "P² = I",
            Axiom::TSquared => "T² = I",
            Axiom::PtCommute => "PT = TP",
            Axiom::PNotIdentity => "P ≠ I",
            Axiom::CSquared => "C² = I",
            Axiom::CptCommute => "CPT = TPC",
            Axiom::PcHermitian => "PC Hermitian",
            Axiom::PcPositiveDefinite => "PC positive definite",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Axiom::PNotIdentity => write!(
                f,
                "P is the identity operator; a PT-frame requires P ≠ I (||P - I|| = {:.3e})",
                self.residual
            ),
            Axiom::PcPositiveDefinite => write!(
                f,
                "PC is not positive definite (smallest eigenvalue {:.3e})",
                self.residual
            ),
            axiom => write!(f, "{axiom} violated (residual {:.3e})", self.residual),
        }
    }
}

/// Outcome of an axiom check. `passed()` holds exactly when no axiom is
/// violated.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrameReport {
    pub violations: Vec<Violation>,
}

impl FrameReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn check<T: Real>(&mut self, axiom: Axiom, residual: T, bound: T) {
        if !(residual <= bound) {
            self.violations.push(Violation {
                axiom,
                residual: residual.as_f64(),
            });
        }
    }

    fn merge(&mut self, other: FrameReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for FrameReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("all axioms hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A validated PT-frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PtFrame<T: Real> {
    p: Operator<T>,
    t: Operator<T>,
}

impl<T: Real> PtFrame<T> {
    pub fn new(p: Operator<T>, t: Operator<T>, tol: T) -> Result<Self> {
        let report = validate_pt_frame(&p, &t, tol)?;
        if !report.passed() {
            return Err(Error::FrameInvalid(report));
        }
        Ok(Self { p, t })
    }

    /// Swaps `e₁↔e₂, e₃↔e₄, …` with conjugation `T`.
    pub fn pair_swap(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        let mut p = ComplexMatrix::zeros(n, n);
        for k in (0..n).step_by(2) {
            p[(k, k + 1)] = c_real(T::one());
            p[(k + 1, k)] = c_real(T::one());
        }
        Ok(Self {
            p: Operator::from_parts(OperatorKind::Linear, p),
            t: Operator::conjugation(n),
        })
    }

    /// Frame from a real involution `P ≠ I`, paired with conjugation `T`.
    pub fn from_involution(p: ComplexMatrix<T>, tol: T) -> Result<Self> {
        let p = Operator::linear(p)?;
        let n = p.dim();
        let max_imag = p
            .matrix()
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.im.abs()));
        if max_imag > tol {
            return Err(Error::NonRealEntries {
                max_imag: max_imag.as_f64(),
            });
        }
        let id = ComplexMatrix::<T>::identity(n, n);
        let square = (p.matrix() * p.matrix() - &id).norm();
        if square > tol * T::one().max(p.matrix().norm_squared()) {
            return Err(Error::NotInvolution {
                residual: square.as_f64(),
            });
        }
        if (p.matrix() - &id).norm() <= tol {
            return Err(Error::IsIdentity);
        }
        Self::new(p, Operator::conjugation(n), tol)
    }

    pub(crate) fn from_parts(p: Operator<T>, t: Operator<T>) -> Self {
        Self { p, t }
    }

    pub fn p(&self) -> &Operator<T> {
        &self.p
    }

    pub fn t(&self) -> &Operator<T> {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// The antilinear operator `PT`.
    pub fn pt(&self) -> Operator<T> {
        self.p.compose(&self.t).expect("frame operators share a dimension")
    }

    /// True when `T` is plain entrywise conjugation.
    pub fn has_conjugation_t(&self) -> bool {
        self.t.matrix() == &ComplexMatrix::identity(self.dim(), self.dim())
    }
}

pub fn validate_pt_frame<T: Real>(p: &Operator<T>, t: &Operator<T>, tol: T) -> Result<FrameReport> {
    p.expect_kind(OperatorKind::Linear)?;
    t.expect_kind(OperatorKind::Antilinear)?;
    check_dim(p.dim(), t.dim())?;
    let n = p.dim();
    let id = ComplexMatrix::<T>::identity(n, n);
    let norm_p = operator_norm(p.matrix());
    let norm_t = operator_norm(t.matrix());
    let one = T::one();

    let mut report = FrameReport::default();
    let pp = p.compose(p)?;
    report.check(Axiom::PSquared, (pp.matrix() - &id).norm(), tol * one.max(norm_p * norm_p));
    let tt = t.compose(t)?;
    report.check(Axiom::TSquared, (tt.matrix() - &id).norm(), tol * one.max(norm_t * norm_t));
    let pt = p.compose(t)?;
    let tp = t.compose(p)?;
    report.check(
        Axiom::PtCommute,
        (pt.matrix() - tp.matrix()).norm(),
        tol * one.max(norm_p * norm_t),
    );
    let distance_from_identity = (p.matrix() - &id).norm();
    if distance_from_identity <= tol {
        report.violations.push(Violation {
            axiom: Axiom::PNotIdentity,
            residual: distance_from_identity.as_f64(),
        });
    }
    Ok(report)
}

pub fn pair_swap_frame<T: Real>(n: usize) -> Result<PtFrame<T>> {
    PtFrame::pair_swap(n)
}

pub fn frame_from_involution<T: Real>(p: ComplexMatrix<T>, tol: T) -> Result<PtFrame<T>> {
    PtFrame::from_involution(p, tol)
}

/// A validated CPT-frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CptFrame<T: Real> {
    frame: PtFrame<T>,
    c: Operator<T>,
}

impl<T: Real> CptFrame<T> {
    pub fn new(c: Operator<T>, frame: PtFrame<T>, tol: T) -> Result<Self> {
        let report = validate_cpt_frame(&c, &frame, tol)?;
        if !report.passed() {
            return Err(Error::FrameInvalid(report));
        }
        Ok(Self { frame, c })
    }

    pub(crate) fn from_parts(c: Operator<T>, frame: PtFrame<T>) -> Self {
        Self { frame, c }
    }

    pub fn frame(&self) -> &PtFrame<T> {
        &self.frame
    }

    pub fn c(&self) -> &Operator<T> {
        &self.c
    }

    pub fn p(&self) -> &Operator<T> {
        self.frame.p()
    }

    pub fn t(&self) -> &Operator<T> {
        self.frame.t()
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// The metric `PC`.
    pub fn pc(&self) -> ComplexMatrix<T> {
        self.frame.p().matrix() * self.c.matrix()
    }

    /// `‖CH − HC‖_F`.
    pub fn commutator_residual(&self, h: &ComplexMatrix<T>) -> Result<T> {
        check_dim(self.dim(), h.nrows())?;
        let c = self.c.matrix();
        Ok((c * h - h * c).norm())
    }
}

pub fn validate_cpt_frame<T: Real>(
    c: &Operator<T>,
    frame: &PtFrame<T>,
    tol: T,
) -> Result<FrameReport> {
    c.expect_kind(OperatorKind::Linear)?;
    check_dim(frame.dim(), c.dim())?;
    let n = c.dim();
    let id = ComplexMatrix::<T>::identity(n, n);
    let one = T::one();
    let norm_c = operator_norm(c.matrix());
    let c_scale = one.max(norm_c * norm_c);

    let mut report = FrameReport::default();
    let cc = c.compose(c)?;
    report.check(Axiom::CSquared, (cc.matrix() - &id).norm(), tol * c_scale);

    let pt = frame.pt();
    let cpt = c.compose(&pt)?;
    let tpc = frame.t().compose(&frame.p().compose(c)?)?;
    report.check(Axiom::CptCommute, (cpt.matrix() - tpc.matrix()).norm(), tol * c_scale);

    let pc = frame.p().matrix() * c.matrix();
    let pc_norm = operator_norm(&pc);
    let herm = hermiticity_residual(&pc);
    let herm_bound = tol * one.max(pc_norm);
    if herm <= herm_bound {
        // hermitian_spectrum re-checks Hermiticity with the same bound.
        let (values, _) = hermitian_spectrum(&pc, tol)?;
        let smallest = values.first().copied().unwrap_or_else(T::zero);
        if !(smallest > tol * pc_norm) {
            report.violations.push(Violation {
                axiom: Axiom::PcPositiveDefinite,
                residual: smallest.as_f64(),
            });
        }
    } else {
        report.check(Axiom::PcHermitian, herm, herm_bound);
        report.violations.push(Violation {
            axiom: Axiom::PcPositiveDefinite,
            residual: f64::NAN,
        });
    }
    Ok(report)
}

/// Validation of a composite built from already-validated parts: the
/// conjunction of both component reports.
pub fn conjoin(mut a: FrameReport, b: FrameReport) -> FrameReport {
    a.merge(b);
    a
}
