//! Built-in two-level PT-symmetric families and their closed forms.
//!
//! The basic block is
//!
//! ```text
//! H(r, s, θ) = [[r·e^{iθ}, s], [s, r·e^{-iθ}]]
//! ```
//!
//! with the swap `P` and conjugation `T`. With `sin φ = (r/s)·sin θ` it has
//! `E± = r·cos θ ± s·cos φ` when `|sin φ| ≤ 1` and the conjugate pair
//! `r·cos θ ± i·sqrt(r²·sin²θ − s²)` otherwise.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::compose::tensor_pt_frames;
use crate::error::{Error, Result};
use crate::frames::PtFrame;
use crate::linops::{block_diag, from_real_rows};
use crate::scalar::{c, c_real, cis, ComplexMatrix, Real};
use crate::symmetry::{classify_symmetry, SymmetryReport, Warning};

/// Distance from the threshold `|(r/s)·sinθ| = 1` below which
/// [`classify_model`] attaches a proximity warning.
pub const EP_WINDOW: f64 = 1e-6;

/// One `(r, s, θ)` block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevel<T: Real> {
    pub r: T,
    pub s: T,
    pub theta: T,
}

impl<T: Real> TwoLevel<T> {
    pub fn new(r: T, s: T, theta: T) -> Self {
        Self { r, s, theta }
    }

    pub fn validate(&self) -> Result<()> {
        nonzero(self.r, "r")?;
        nonzero(self.s, "s")?;
        nonzero(self.theta, "theta")
    }

    pub fn matrix(&self) -> ComplexMatrix<T> {
        let z = cis(self.theta) * c_real(self.r);
        ComplexMatrix::from_row_slice(2, 2, &[z, c_real(self.s), c_real(self.s), z.conj()])
    }

    /// `(r/s)·sin θ`, the sine of `φ` when it is at most one in magnitude.
    pub fn sin_phi(&self) -> T {
        self.r / self.s * self.theta.sin()
    }

    /// `| |sin φ| − 1 |`.
    pub fn threshold_distance(&self) -> T {
        ComplexField::abs(ComplexField::abs(self.sin_phi()) - T::one())
    }
}

fn nonzero<T: Real>(x: T, name: &'static str) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be finite")));
    }
    if x == T::zero() {
        return Err(Error::ZeroParameter(name));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec<T: Real> {
    TwoByTwo(TwoLevel<T>),
    /// The block plus an isolated level `a` fixed by `P`.
    ThreeByThree { block: TwoLevel<T>, a: T },
    /// Two independent blocks, block-diagonal.
    FourByFour { upper: TwoLevel<T>, lower: TwoLevel<T> },
    /// Finite direct sum of blocks.
    DirectSumChain(Vec<TwoLevel<T>>),
    /// `H₁⊗H₂`.
    TensorPair(TwoLevel<T>, TwoLevel<T>),
}

impl<T: Real> ModelSpec<T> {
    pub fn blocks(&self) -> Vec<TwoLevel<T>> {
        match self {
            ModelSpec::TwoByTwo(b) | ModelSpec::ThreeByThree { block: b, .. } => vec![*b],
            ModelSpec::FourByFour { upper, lower } => vec![*upper, *lower],
            ModelSpec::DirectSumChain(blocks) => blocks.clone(),
            ModelSpec::TensorPair(a, b) => vec![*a, *b],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let ModelSpec::DirectSumChain(blocks) = self {
            if blocks.is_empty() {
                return Err(Error::EmptySpec);
            }
        }
        if let ModelSpec::ThreeByThree { a, .. } = self {
            nonzero(*a, "a")?;
        }
        self.blocks().iter().try_for_each(TwoLevel::validate)
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelSpec::TwoByTwo(_) => 2,
            ModelSpec::ThreeByThree { .. } => 3,
            ModelSpec::FourByFour { .. } | ModelSpec::TensorPair(..) => 4,
            ModelSpec::DirectSumChain(blocks) => 2 * blocks.len(),
        }
    }

    /// Smallest [`TwoLevel::threshold_distance`] over the blocks.
    pub fn threshold_distance(&self) -> T {
        self.blocks()
            .iter()
            .map(TwoLevel::threshold_distance)
            .fold(T::max_value().unwrap_or_else(T::one), |a, b| a.min(b))
    }
}

/// The model matrix and its frame.
pub fn build_model<T: Real>(spec: &ModelSpec<T>) -> Result<(ComplexMatrix<T>, PtFrame<T>)> {
    spec.validate()?;
    match spec {
        ModelSpec::TwoByTwo(b) => Ok((b.matrix(), PtFrame::pair_swap(2)?)),
        ModelSpec::ThreeByThree { block, a } => {
            let h = block_diag(&[&block.matrix(), &ComplexMatrix::from_element(1, 1, c_real(*a))]);
            let p = from_real_rows(3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
            Ok((h, PtFrame::from_involution(p, T::DEFAULT_TOL)?))
        }
        ModelSpec::FourByFour { upper, lower } => {
            Ok((block_diag(&[&upper.matrix(), &lower.matrix()]), PtFrame::pair_swap(4)?))
        }
        ModelSpec::DirectSumChain(blocks) => {
            let mats: Vec<_> = blocks.iter().map(TwoLevel::matrix).collect();
            let h = block_diag(&mats.iter().collect::<Vec<_>>());
            Ok((h, PtFrame::pair_swap(2 * blocks.len())?))
        }
        ModelSpec::TensorPair(a, b) => {
            let swap = PtFrame::pair_swap(2)?;
            let frame = tensor_pt_frames(&swap, &swap, T::DEFAULT_TOL)?;
            Ok((a.matrix().kronecker(&b.matrix()), frame))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Unbroken,
    Broken,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormSpectrum<T: Real> {
    pub regime: Regime,
    /// Principal `arcsin((r/s)·sinθ)`; `None` in the broken regime.
    pub phi: Option<T>,
    /// `[E₊, E₋]`.
    pub eigenvalues: [Complex<T>; 2],
    /// Set when `|(r/s)·sinθ| = 1` to rounding: `E₊ = E₋` and the
    /// eigenvectors coalesce.
    pub critical: bool,
}

/// Closed-form eigenvalues of one block.
pub fn closed_form_spectrum<T: Real>(r: T, s: T, theta: T) -> Result<ClosedFormSpectrum<T>> {
    let block = TwoLevel::new(r, s, theta);
    block.validate()?;
    let x = block.sin_phi();
    let base = r * theta.cos();
    let critical = block.threshold_distance() <= T::lit(4.0) * T::EPSILON;
    if critical || ComplexField::abs(x) <= T::one() {
        let phi = x.max(-T::one()).min(T::one()).asin();
        let split = s * phi.cos();
        Ok(ClosedFormSpectrum {
            regime: Regime::Unbroken,
            phi: Some(phi),
            eigenvalues: [c_real(base + split), c_real(base - split)],
            critical,
        })
    } else {
        let gap = (r * r * theta.sin() * theta.sin() - s * s).sqrt();
        Ok(ClosedFormSpectrum {
            regime: Regime::Broken,
            phi: None,
            eigenvalues: [c(base, gap), c(base, -gap)],
            critical: false,
        })
    }
}

/// `C(φ) = [[i·tan φ, sec φ], [sec φ, −i·tan φ]]` for the two-level block.
pub fn closed_form_c<T: Real>(phi: T, tol: T) -> Result<ComplexMatrix<T>> {
    let cos = phi.cos();
    if !(ComplexField::abs(phi) < T::frac_pi_2()) || cos <= tol {
        return Err(Error::ExceptionalPoint { cos_phi: cos.as_f64() });
    }
    let tan = phi.tan();
    let sec = T::one() / cos;
    Ok(ComplexMatrix::from_row_slice(
        2,
        2,
        &[c(T::zero(), tan), c_real(sec), c_real(sec), c(T::zero(), -tan)],
    ))
}

/// Builds and classifies a model, flagging proximity to a breaking
/// threshold.
pub fn classify_model<T: Real>(spec: &ModelSpec<T>, tol: T) -> Result<SymmetryReport<T>> {
    let (h, frame) = build_model(spec)?;
    let mut report = classify_symmetry(&h, &frame, tol)?;
    let distance = spec.threshold_distance();
    if distance <= T::lit(EP_WINDOW) {
        report.warnings.push(Warning::ExceptionalPointProximity {
            distance: distance.as_f64(),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::eigenvalues;
    use crate::symmetry::{is_pt_symmetric, Classification};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    type M = ComplexMatrix<f64>;

    #[test]
    fn two_by_two_matrix() {
        let (h, frame) = build_model(&ModelSpec::TwoByTwo(TwoLevel::new(1.0, 2.0, FRAC_PI_6))).unwrap();
        let z = Complex::from_polar(1.0, FRAC_PI_6);
        let expected = M::from_row_slice(2, 2, &[z, c(2.0, 0.0), c(2.0, 0.0), z.conj()]);
        assert!((h - expected).norm() < 1e-15);
        assert_eq!(frame, PtFrame::pair_swap(2).unwrap());
    }

    #[test]
    fn three_by_three_matrix() {
        let spec = ModelSpec::ThreeByThree { block: TwoLevel::new(1.0, 2.0, 0.4), a: 5.0 };
        let (h, frame) = build_model(&spec).unwrap();
        assert_eq!(h[(2, 2)], c(5.0, 0.0));
        assert_eq!(h[(0, 2)], c(0.0, 0.0));
        assert_eq!(frame.p().matrix()[(2, 2)], c(1.0, 0.0));
        assert!(is_pt_symmetric(&h, &frame, 1e-12).unwrap().0);
        assert!((&h - h.adjoint()).norm() > 0.1);
    }

    #[test]
    fn four_by_four_matrix() {
        let upper = TwoLevel::new(1.0, 2.0, 0.4);
        let lower = TwoLevel::new(0.5, 3.0, 1.1);
        let (h, frame) = build_model(&ModelSpec::FourByFour { upper, lower }).unwrap();
        assert_eq!(h.view((0, 0), (2, 2)), upper.matrix());
        assert_eq!(h.view((2, 2), (2, 2)), lower.matrix());
        assert_eq!(h[(0, 2)], c(0.0, 0.0));
        assert!(is_pt_symmetric(&h, &frame, 1e-12).unwrap().0);
    }

    #[test]
    fn chain_and_tensor_are_pt_symmetric() {
        let blocks: Vec<_> = (1..=10).map(|k| TwoLevel::new(1.0, 2.0 + k as f64, 0.1 * k as f64)).collect();
        for spec in [
            ModelSpec::DirectSumChain(blocks),
            ModelSpec::TensorPair(TwoLevel::new(1.0, 2.0, FRAC_PI_6), TwoLevel::new(1.0, 3.0, 0.7)),
        ] {
            let (h, frame) = build_model(&spec).unwrap();
            assert_eq!(h.nrows(), spec.dim());
            assert!(is_pt_symmetric(&h, &frame, 1e-12).unwrap().0);
        }
    }

    #[test]
    fn zero_parameters_rejected() {
        assert_eq!(
            build_model(&ModelSpec::TwoByTwo(TwoLevel::new(0.0, 2.0, 1.0))).unwrap_err(),
            Error::ZeroParameter("r")
        );
        assert_eq!(
            build_model(&ModelSpec::ThreeByThree { block: TwoLevel::new(1.0, 2.0, 1.0), a: 0.0 }).unwrap_err(),
            Error::ZeroParameter("a")
        );
        assert_eq!(
            closed_form_spectrum(1.0, 2.0, 0.0).unwrap_err(),
            Error::ZeroParameter("theta")
        );
        assert_eq!(build_model(&ModelSpec::<f64>::DirectSumChain(vec![])).unwrap_err(), Error::EmptySpec);
    }

    #[test]
    fn closed_form_unbroken() {
        let spec = closed_form_spectrum(1.0, 2.0, FRAC_PI_6).unwrap();
        assert_eq!(spec.regime, Regime::Unbroken);
        assert!((spec.eigenvalues[0].re - 2.802517).abs() < 1e-6);
        assert!((spec.eigenvalues[1].re - (-1.070466)).abs() < 1e-6);
        assert!((spec.phi.unwrap() - 0.25f64.asin()).abs() < 1e-15);
        assert!(!spec.critical);
    }

    #[test]
    fn closed_form_broken() {
        let spec = closed_form_spectrum(2.0, 1.0, FRAC_PI_2).unwrap();
        assert_eq!(spec.regime, Regime::Broken);
        assert!(spec.eigenvalues[0].re.abs() < 1e-15);
        assert!((spec.eigenvalues[0].im - 1.732051).abs() < 1e-6);
        assert_eq!(spec.eigenvalues[1], spec.eigenvalues[0].conj());
    }

    #[test]
    fn closed_form_small_angle_and_critical() {
        let spec = closed_form_spectrum(1.5, 2.0, 1e-8).unwrap();
        assert!((spec.eigenvalues[0].re - 3.5).abs() < 1e-12);
        assert!((spec.eigenvalues[1].re - (-0.5)).abs() < 1e-12);

        let critical = closed_form_spectrum(1.0, 1.0, FRAC_PI_2).unwrap();
        assert_eq!(critical.regime, Regime::Unbroken);
        assert!(critical.critical);
        assert!((critical.eigenvalues[0] - critical.eigenvalues[1]).norm() < 1e-7);
    }

    #[test]
    fn closed_form_matches_eigenvalues() {
        let spec = ModelSpec::TwoByTwo(TwoLevel::new(1.0, 2.0, FRAC_PI_6));
        let (h, _) = build_model(&spec).unwrap();
        let ev = eigenvalues(&h).unwrap();
        let cf = closed_form_spectrum(1.0, 2.0, FRAC_PI_6).unwrap();
        assert!((ev[0] - cf.eigenvalues[1]).norm() < 1e-10);
        assert!((ev[1] - cf.eigenvalues[0]).norm() < 1e-10);
    }

    #[test]
    fn closed_form_c_examples() {
        let at_zero = closed_form_c(0.0, 1e-10).unwrap();
        assert_eq!(at_zero, from_real_rows::<f64>(2, &[0.0, 1.0, 1.0, 0.0]));

        let c_quarter = closed_form_c(0.25f64.asin(), 1e-10).unwrap();
        assert!((c_quarter[(0, 0)] - c(0.0, 0.258199)).norm() < 1e-6);
        assert!((c_quarter[(0, 1)] - c(1.032796, 0.0)).norm() < 1e-6);

        for phi in [-1.2, -0.3, 0.7, 1.5] {
            let m = closed_form_c(phi, 1e-10).unwrap();
            assert!((&m * &m - M::identity(2, 2)).norm() < 1e-12);
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            assert!((det - c(-1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn closed_form_c_at_exceptional_point() {
        assert!(matches!(closed_form_c(FRAC_PI_2, 1e-10), Err(Error::ExceptionalPoint { .. })));
        assert!(matches!(closed_form_c(2.0, 1e-10), Err(Error::ExceptionalPoint { .. })));
    }

    #[test]
    fn classify_model_warns_near_threshold() {
        let near = ModelSpec::TwoByTwo(TwoLevel::new(1.0, 1.0 + 1e-7, FRAC_PI_2));
        let report = classify_model(&near, 1e-10).unwrap();
        assert!(report
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::ExceptionalPointProximity { .. })));

        let far = ModelSpec::TwoByTwo(TwoLevel::new(1.0, 2.0, FRAC_PI_6));
        let report = classify_model(&far, 1e-10).unwrap();
        assert_eq!(report.classification, Classification::Unbroken);
        assert!(report.warnings.is_empty());
    }
}
