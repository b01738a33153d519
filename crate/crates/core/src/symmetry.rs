//! PT-symmetry tests and broken/unbroken classification.

use std::collections::BTreeSet;

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::frames::PtFrame;
use crate::linops::{check_dim, check_square, eigendecompose, eigenvalues, Operator};
use crate::scalar::{c, cis, ComplexMatrix, ComplexVector, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Unbroken,
    Broken,
    NotApplicable,
}

/// A real eigenvalue with a PT-fixed eigenvector `φ = e^{iθ/2}·ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedState<T: Real> {
    pub energy: T,
    pub state: ComplexVector<T>,
    /// Phase of `PT·ψ = e^{iθ}·ψ`, in `[0, 2π)`. Zero for states re-based
    /// inside a degenerate eigenspace.
    pub theta: T,
    /// Index of the degenerate eigenspace the state belongs to.
    pub group: usize,
}

/// A non-real eigenvalue and its conjugate partner.
#[derive(Debug, Clone, PartialEq)]
pub struct BrokenPair<T: Real> {
    pub value: Complex<T>,
    pub partner: Complex<T>,
    pub vector: ComplexVector<T>,
    pub partner_vector: ComplexVector<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// The parameters sit within the proximity window of a symmetry-breaking
    /// threshold; `distance` is `| |(r/s)·sinθ| − 1 |` for the closest block.
    ExceptionalPointProximity { distance: f64 },
    /// A non-real eigenvalue found no conjugate partner within tolerance.
    UnpairedEigenvalue { re: f64, im: f64 },
    /// A real eigenvalue whose eigenvector is not a PT eigenstate.
    MisalignedState { energy: f64, residual: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport<T: Real> {
    pub pt_symmetric: bool,
    pub pt_residual: T,
    pub classification: Classification,
    /// Sorted by (re, im).
    pub eigenvalues: Vec<Complex<T>>,
    pub aligned_states: Vec<AlignedState<T>>,
    pub broken_pairs: Vec<BrokenPair<T>>,
    pub eigenvector_condition: Option<T>,
    pub warnings: Vec<Warning>,
}

impl<T: Real> SymmetryReport<T> {
    pub fn is_unbroken(&self) -> bool {
        self.classification == Classification::Unbroken
    }
}

/// Tests `(PT)·H·(PT) = H`. Returns the verdict and `‖(PT)H(PT) − H‖_F`.
pub fn is_pt_symmetric<T: Real>(h: &ComplexMatrix<T>, frame: &PtFrame<T>, tol: T) -> Result<(bool, T)> {
    check_square(h)?;
    check_dim(frame.dim(), h.nrows())?;
    let pt = frame.pt();
    let conjugated = pt.compose(&Operator::linear(h.clone())?)?.compose(&pt)?;
    let residual = (conjugated.matrix() - h).norm();
    Ok((residual <= tol * h.norm(), residual))
}

/// Rotates an eigenstate of `PT` onto a fixed point of `PT`.
///
/// With `PT·v = e^{iθ}·v`, returns `(e^{iθ/2}·v, θ)`.
pub fn phase_align<T: Real>(
    v: &ComplexVector<T>,
    frame: &PtFrame<T>,
    tol: T,
) -> Result<(ComplexVector<T>, T)> {
    check_dim(frame.dim(), v.len())?;
    let norm_sq = v.norm_squared();
    if norm_sq == T::zero() {
        return Err(Error::ZeroVector);
    }
    let image = frame.pt().apply(v)?;
    let factor = v.dotc(&image).unscale(norm_sq);
    let residual = (&image - v * factor).norm();
    let unit_defect = ComplexField::abs(factor.modulus() - T::one());
    if residual > tol * norm_sq.sqrt() || unit_defect > tol {
        return Err(Error::NotPtEigenstate {
            residual: residual.max(unit_defect).as_f64(),
        });
    }
    let two_pi = T::two_pi();
    let mut theta = factor.argument();
    if theta < T::zero() {
        theta += two_pi;
    }
    if theta <= tol || theta >= two_pi - tol {
        theta = T::zero();
    }
    Ok((v * cis(theta / T::lit(2.0)), theta))
}

/// Classifies the PT-symmetry of `h` as unbroken, broken, or not
/// applicable (not PT-symmetric at all).
pub fn classify_symmetry<T: Real>(
    h: &ComplexMatrix<T>,
    frame: &PtFrame<T>,
    tol: T,
) -> Result<SymmetryReport<T>> {
    let (pt_symmetric, pt_residual) = is_pt_symmetric(h, frame, tol)?;
    if !pt_symmetric {
        return Ok(SymmetryReport {
            pt_symmetric,
            pt_residual,
            classification: Classification::NotApplicable,
            eigenvalues: eigenvalues(h)?,
            aligned_states: Vec::new(),
            broken_pairs: Vec::new(),
            eigenvector_condition: None,
            warnings: Vec::new(),
        });
    }

    let eig = eigendecompose(h, tol)?;
    let threshold = reality_threshold(h, tol);
    let values = eig.values();

    let (real_idx, complex_idx): (Vec<usize>, Vec<usize>) =
        (0..values.len()).partition(|&i| ComplexField::abs(values[i].im) <= threshold);

    let mut warnings = Vec::new();
    let mut broken_pairs = Vec::new();
    let mut unpaired: Vec<usize> = complex_idx.clone();
    while let Some(i) = unpaired.first().copied() {
        unpaired.remove(0);
        let target = values[i].conj();
        let best = unpaired
            .iter()
            .enumerate()
            .map(|(pos, &j)| (pos, j, (values[j] - target).modulus()))
            .min_by(|a, b| a.2.partial_cmp(&b.2).unwrap_or(std::cmp::Ordering::Equal));
        match best {
            Some((pos, j, dist)) if dist <= threshold.max(tol * values[i].modulus()) * T::lit(1e3) => {
                unpaired.remove(pos);
                let (a, b) = if values[i].im >= T::zero() { (i, j) } else { (j, i) };
                broken_pairs.push(BrokenPair {
                    value: values[a],
                    partner: values[b],
                    vector: eig.vector(a),
                    partner_vector: eig.vector(b),
                });
            }
            _ => warnings.push(Warning::UnpairedEigenvalue {
                re: values[i].re.as_f64(),
                im: values[i].im.as_f64(),
            }),
        }
    }

    let mut aligned_states = Vec::new();
    let mut all_aligned = true;
    for (group, members) in cluster_real(values, &real_idx, threshold).into_iter().enumerate() {
        let energy = members.iter().fold(T::zero(), |acc, &i| acc + values[i].re)
            / T::from_usize(members.len()).unwrap_or_else(T::one);
        if members.len() == 1 {
            match phase_align(&eig.vector(members[0]), frame, tol) {
                Ok((state, theta)) => aligned_states.push(AlignedState {
                    energy,
                    state,
                    theta,
                    group,
                }),
                Err(Error::NotPtEigenstate { residual }) => {
                    all_aligned = false;
                    warnings.push(Warning::MisalignedState {
                        energy: energy.as_f64(),
                        residual,
                    });
                }
                Err(e) => return Err(e),
            }
        } else {
            let basis: Vec<_> = members.iter().map(|&i| eig.vector(i)).collect();
            match real_structure_basis(&basis, frame)? {
                Some(fixed) => aligned_states.extend(fixed.into_iter().map(|state| AlignedState {
                    energy,
                    state,
                    theta: T::zero(),
                    group,
                })),
                None => {
                    all_aligned = false;
                    warnings.push(Warning::MisalignedState {
                        energy: energy.as_f64(),
                        residual: f64::NAN,
                    });
                }
            }
        }
    }

    let classification = if complex_idx.is_empty() && all_aligned {
        Classification::Unbroken
    } else {
        Classification::Broken
    };

    Ok(SymmetryReport {
        pt_symmetric,
        pt_residual,
        classification,
        eigenvalues: values.to_vec(),
        aligned_states,
        broken_pairs,
        eigenvector_condition: Some(eig.condition()),
        warnings,
    })
}

/// `|Im λ|` at or below this counts as real; also the clustering gap for
/// degenerate real eigenvalues.
pub fn reality_threshold<T: Real>(h: &ComplexMatrix<T>, tol: T) -> T {
    T::lit(10.0) * tol * T::one().max(h.norm())
}

fn cluster_real<T: Real>(values: &[Complex<T>], real_idx: &[usize], gap: T) -> Vec<Vec<usize>> {
    // `values` is sorted by real part, so neighbours are adjacent.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in real_idx {
        match groups.last_mut() {
            Some(g) if values[i].re - values[*g.last().unwrap()].re <= gap => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// PT-fixed basis of the span of `basis` (assumed PT-invariant).
///
/// Candidates `v + PT·v` and `i·(v − PT·v)` are PT-fixed; they are
/// orthonormalized with the real inner product `Re⟨x, y⟩`, so every
/// accepted vector stays PT-fixed. Returns `None` when fewer than
/// `basis.len()` independent fixed vectors exist.
pub(crate) fn real_structure_basis<T: Real>(
    basis: &[ComplexVector<T>],
    frame: &PtFrame<T>,
) -> Result<Option<Vec<ComplexVector<T>>>> {
    let pt = frame.pt();
    let i = c(T::zero(), T::one());
    let mut candidates = Vec::with_capacity(2 * basis.len());
    for v in basis {
        let image = pt.apply(v)?;
        candidates.push(v + &image);
        candidates.push((v - &image) * i);
    }
    candidates.sort_by(|a, b| {
        b.norm_squared()
            .partial_cmp(&a.norm_squared())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let cutoff = T::lit(100.0) * T::EPSILON.sqrt();
    let mut accepted: Vec<ComplexVector<T>> = Vec::with_capacity(basis.len());
    for mut w in candidates {
        if accepted.len() == basis.len() {
            break;
        }
        let original = w.norm();
        if original == T::zero() {
            continue;
        }
        for _ in 0..2 {
            for b in &accepted {
                let coeff = b.dotc(&w).re;
                w -= b * c(coeff, T::zero());
            }
        }
        let remaining = w.norm();
        if remaining > cutoff * original {
            accepted.push(w.unscale(remaining));
        }
    }
    Ok((accepted.len() == basis.len()).then_some(accepted))
}

/// The structural forms a 2×2 matrix can satisfy under the pair-swap frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructuralForm {
    /// `H⁺ = H`: `[[a, b], [b̄, d]]`, `a, d` real.
    Hermitian,
    /// `Hᵗ = H`: `[[a, b], [b, d]]`.
    Symmetric,
    /// `(PT)H(PT) = H`: `[[a, b], [b̄, ā]]`.
    PtSymmetric,
    /// PT-symmetric and Hermitian: `[[a, b], [b̄, a]]`, `a` real.
    PtHermitian,
    /// PT-symmetric, Hermitian and symmetric: `[[a, b], [b, a]]`, `a, b` real.
    PtHermitianSymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoByTwoClass {
    pub hermitian: bool,
    pub symmetric: bool,
    pub pt_symmetric: bool,
    pub forms: BTreeSet<StructuralForm>,
}

/// Evaluates the structural predicates of a 2×2 matrix with respect to the
/// pair-swap frame.
pub fn classify_2x2<T: Real>(h: &ComplexMatrix<T>, tol: T) -> Result<TwoByTwoClass> {
    check_square(h)?;
    check_dim(2, h.nrows())?;
    let bound = tol * T::one().max(h.norm());
    let hermitian = (h - h.adjoint()).norm() <= bound;
    let symmetric = (h - h.transpose()).norm() <= bound;
    let frame = PtFrame::pair_swap(2)?;
    let (pt_symmetric, _) = is_pt_symmetric(h, &frame, tol)?;

    let mut forms = BTreeSet::new();
    if hermitian {
        forms.insert(StructuralForm::Hermitian);
    }
    if symmetric {
        forms.insert(StructuralForm::Symmetric);
    }
    if pt_symmetric {
        forms.insert(StructuralForm::PtSymmetric);
        if hermitian {
            forms.insert(StructuralForm::PtHermitian);
            if symmetric {
                forms.insert(StructuralForm::PtHermitianSymmetric);
            }
        }
    }
    Ok(TwoByTwoClass {
        hermitian,
        symmetric,
        pt_symmetric,
        forms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::from_real_rows;

    type M = ComplexMatrix<f64>;
    type V = ComplexVector<f64>;

    fn h1() -> M {
        from_real_rows(2, &[1.0, 2.0, 2.0, 3.0])
    }
    fn h2() -> M {
        M::from_row_slice(2, 2, &[c(1.0, 1.0), c(0.0, 2.0), c(0.0, -2.0), c(1.0, -1.0)])
    }
    fn h3() -> M {
        M::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(3.0, 0.0)])
    }
    fn dimer(r: f64, s: f64, theta: f64) -> M {
        M::from_row_slice(
            2,
            2,
            &[Complex::from_polar(r, theta), c(s, 0.0), c(s, 0.0), Complex::from_polar(r, -theta)],
        )
    }
    fn swap() -> PtFrame<f64> {
        PtFrame::pair_swap(2).unwrap()
    }

    #[test]
    fn pt_symmetry_of_reference_matrices() {
        assert!(is_pt_symmetric(&h2(), &swap(), 1e-10).unwrap().0);
        assert!(!is_pt_symmetric(&h3(), &swap(), 1e-10).unwrap().0);
        assert!(!is_pt_symmetric(&h1(), &swap(), 1e-10).unwrap().0);
    }

    #[test]
    fn pt_symmetry_dimension_mismatch() {
        let frame = PtFrame::pair_swap(4).unwrap();
        assert!(matches!(
            is_pt_symmetric(&h1(), &frame, 1e-10),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn phase_align_fixed_vector() {
        let v = V::from_vec(vec![c(1.0, 1.0), c(1.0, -1.0)]);
        let (phi, theta) = phase_align(&v, &swap(), 1e-10).unwrap();
        assert_eq!(theta, 0.0);
        assert!((phi - v).norm() < 1e-15);
    }

    #[test]
    fn phase_align_odd_state() {
        // ψ₋ with sinφ = 0.25: PT·ψ₋ = −ψ₋.
        let phi: f64 = 0.25f64.asin();
        let k = 1.0 / (2.0 * phi.cos()).sqrt();
        let psi = V::from_vec(vec![
            Complex::from_polar(k, -phi / 2.0),
            -Complex::from_polar(k, phi / 2.0),
        ]);
        let (aligned, theta) = phase_align(&psi, &swap(), 1e-10).unwrap();
        assert!((theta - std::f64::consts::PI).abs() < 1e-12);
        assert!((&aligned - &psi * c(0.0, 1.0)).norm() < 1e-12);
        let pt = swap().pt();
        assert!((pt.apply(&aligned).unwrap() - &aligned).norm() < 1e-12);
        // The opposite sign choice is equally PT-fixed.
        let other = &psi * c(0.0, -1.0);
        assert!((pt.apply(&other).unwrap() - &other).norm() < 1e-12);
        assert!((aligned.norm() - psi.norm()).abs() < 1e-14);
    }

    #[test]
    fn phase_align_rejects_non_eigenstate() {
        let e1 = V::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            phase_align(&e1, &swap(), 1e-10),
            Err(Error::NotPtEigenstate { .. })
        ));
        let zero = V::zeros(2);
        assert_eq!(phase_align(&zero, &swap(), 1e-10).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn classify_unbroken_dimer() {
        let report = classify_symmetry(&dimer(1.0, 2.0, std::f64::consts::FRAC_PI_6), &swap(), 1e-10)
            .unwrap();
        assert_eq!(report.classification, Classification::Unbroken);
        let energies: Vec<f64> = report.aligned_states.iter().map(|s| s.energy).collect();
        assert!((energies[0] - (-1.070466)).abs() < 1e-6);
        assert!((energies[1] - 2.802517).abs() < 1e-6);
        let pt = swap().pt();
        for s in &report.aligned_states {
            assert!((pt.apply(&s.state).unwrap() - &s.state).norm() < 1e-10);
        }
    }

    #[test]
    fn classify_broken_dimer() {
        let report = classify_symmetry(&dimer(2.0, 1.0, std::f64::consts::FRAC_PI_2), &swap(), 1e-10)
            .unwrap();
        assert_eq!(report.classification, Classification::Broken);
        assert_eq!(report.broken_pairs.len(), 1);
        let pair = &report.broken_pairs[0];
        assert!((pair.value.im - 3f64.sqrt()).abs() < 1e-9);
        assert!((pair.partner - pair.value.conj()).modulus() < 1e-9);
    }

    #[test]
    fn classify_identity_degenerate() {
        for n in [2usize, 4] {
            let frame = PtFrame::pair_swap(n).unwrap();
            let report = classify_symmetry(&M::identity(n, n), &frame, 1e-10).unwrap();
            assert_eq!(report.classification, Classification::Unbroken);
            assert_eq!(report.aligned_states.len(), n);
            let pt = frame.pt();
            for s in &report.aligned_states {
                assert_eq!(s.energy, 1.0);
                assert!((pt.apply(&s.state).unwrap() - &s.state).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn classify_not_applicable() {
        let report = classify_symmetry(&h3(), &swap(), 1e-10).unwrap();
        assert_eq!(report.classification, Classification::NotApplicable);
        assert!(!report.pt_symmetric);
    }

    #[test]
    fn classify_propagates_defective_spectrum() {
        // Exactly at the threshold (r sinθ = s) the dimer is a Jordan block.
        let h = M::from_row_slice(2, 2, &[c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, -1.0)]);
        assert!(matches!(
            classify_symmetry(&h, &swap(), 1e-10),
            Err(Error::DefectiveSpectrum { .. })
        ));
    }

    #[test]
    fn two_by_two_table() {
        let c1 = classify_2x2(&h1(), 1e-12).unwrap();
        assert!(c1.hermitian && c1.symmetric && !c1.pt_symmetric);
        let c2 = classify_2x2(&h2(), 1e-12).unwrap();
        assert!(!c2.hermitian && !c2.symmetric && c2.pt_symmetric);
        let c3 = classify_2x2(&h3(), 1e-12).unwrap();
        assert!(c3.hermitian && !c3.symmetric && !c3.pt_symmetric);

        let all = classify_2x2(&from_real_rows::<f64>(2, &[2.0, 3.0, 3.0, 2.0]), 1e-12).unwrap();
        assert!(all.forms.contains(&StructuralForm::PtHermitianSymmetric));
        assert!(all.forms.contains(&StructuralForm::PtHermitian));
        assert!(all.forms.contains(&StructuralForm::PtSymmetric));
        assert_eq!(all.forms.len(), 5);
    }

    #[test]
    fn two_by_two_rejects_other_sizes() {
        assert!(matches!(
            classify_2x2(&M::identity(3, 3), 1e-12),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
