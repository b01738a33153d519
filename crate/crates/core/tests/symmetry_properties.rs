mod common;

use common::*;
use cpt_core::{classify_symmetry, eigenvalues, phase_align, Classification, PtFrame64};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #[test]
    fn spectrum_is_closed_under_conjugation(seed in any::<u64>(), half in 1usize..5) {
        let frame = PtFrame64::pair_swap(2 * half).unwrap();
        let h = random_pt_symmetric(&mut rng(seed), &frame);
        let ev = eigenvalues(&h).unwrap();
        let conj: Vec<_> = ev.iter().map(|z| z.conj()).collect();
        prop_assert!(multiset_distance(&ev, &conj) <= 1e-8 * (1.0 + h.norm()));
    }

    #[test]
    fn unbroken_implies_real(seed in any::<u64>(), half in 1usize..4) {
        let frame = PtFrame64::pair_swap(2 * half).unwrap();
        let h = random_pt_symmetric(&mut rng(seed), &frame);
        if let Ok(report) = classify_symmetry(&h, &frame, 1e-10) {
            if report.classification == Classification::Unbroken {
                let threshold = cpt_core::symmetry::reality_threshold(&h, 1e-10);
                prop_assert!(report.eigenvalues.iter().all(|z| z.im.abs() <= threshold));
            }
        }
    }

    #[test]
    fn aligned_states_realign_with_zero_phase(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rr, s, t) = random_unbroken_params(&mut r, 0.05);
        let frame = PtFrame64::pair_swap(2).unwrap();
        let report = classify_symmetry(&dimer(rr, s, t), &frame, 1e-10).unwrap();
        prop_assert_eq!(report.classification, Classification::Unbroken);
        for state in &report.aligned_states {
            let (again, theta) = phase_align(&state.state, &frame, 1e-9).unwrap();
            prop_assert_eq!(theta, 0.0);
            prop_assert!((again - &state.state).norm() <= 1e-12);
        }
    }

    #[test]
    fn classification_is_scale_invariant(seed in any::<u64>(), scale in prop_oneof![-5.0f64..-0.2, 0.2f64..5.0]) {
        let mut r = rng(seed);
        let params = if r.random_bool(0.5) {
            random_unbroken_params(&mut r, 0.05)
        } else {
            random_broken_params(&mut r, 0.05)
        };
        let h = dimer(params.0, params.1, params.2);
        let frame = PtFrame64::pair_swap(2).unwrap();
        let base = classify_symmetry(&h, &frame, 1e-10).unwrap();
        let scaled = classify_symmetry(&(&h * c(scale, 0.0)), &frame, 1e-10).unwrap();
        prop_assert_eq!(base.classification, scaled.classification);
        let expected: Vec<_> = base.eigenvalues.iter().map(|z| z * scale).collect();
        prop_assert!(multiset_distance(&expected, &scaled.eigenvalues) <= 1e-10 * (1.0 + scale.abs() * h.norm()));
    }
}


#[test]
fn random_pt_symmetric_matrices_classify() {
    let mut r = rng(5);
    let frame = PtFrame64::pair_swap(4).unwrap();
    let mut seen = [0usize; 2];
    for _ in 0..200 {
        let h = random_pt_symmetric(&mut r, &frame);
        let report = classify_symmetry(&h, &frame, 1e-10).unwrap();
        assert!(report.pt_symmetric);
        match report.classification {
            Classification::Unbroken => seen[0] += 1,
            Classification::Broken => {
                seen[1] += 1;
                for pair in &report.broken_pairs {
                    assert!((pair.value - pair.partner.conj()).norm() <= 1e-8);
                }
            }
            Classification::NotApplicable => unreachable!(),
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}
