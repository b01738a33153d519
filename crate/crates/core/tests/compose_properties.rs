mod common;

use common::*;
use cpt_core::frames::conjoin;
use cpt_core::{
    build_c, classify_symmetry, direct_sum, doubling, eigenvalues, tensor_frames, validate_cpt_frame, BlockFrame,
    BlockSpec, Classification, ComplexMatrix64, PtFrame64,
};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #[test]
    fn tensor_spectrum_is_pairwise_products(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        let b = random_matrix(&mut r, m);
        let alpha = eigenvalues(&a).unwrap();
        let beta = eigenvalues(&b).unwrap();
        let products: Vec<_> = alpha.iter().flat_map(|x| beta.iter().map(move |y| x * y)).collect();
        let spectrum = eigenvalues(&a.kronecker(&b)).unwrap();
        prop_assert!(multiset_distance(&products, &spectrum) <= 1e-8 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn composite_validation_follows_components(seed in any::<u64>()) {
        let mut r = rng(seed);
        let frames: Vec<_> = (0..2)
            .map(|_| {
                let (rr, s, t) = random_unbroken_params(&mut r, 0.05);
                build_c(&dimer(rr, s, t), &PtFrame64::pair_swap(2).unwrap(), 1e-10).unwrap().cpt
            })
            .collect();
        let components = frames
            .iter()
            .map(|f| validate_cpt_frame(f.c(), f.frame(), 1e-10).unwrap())
            .fold(Default::default(), conjoin);
        prop_assert!(components.passed());
        let tensor = tensor_frames(&frames[0], &frames[1], 1e-10).unwrap();
        prop_assert!(validate_cpt_frame(tensor.c(), tensor.frame(), 1e-10).unwrap().passed());
    }

    #[test]
    fn direct_sum_classification_is_blockwise(seed in any::<u64>(), blocks in 1usize..5) {
        let mut r = rng(seed);
        let swap = PtFrame64::pair_swap(2).unwrap();
        let mut spec = BlockSpec::new();
        let mut all_unbroken = true;
        for _ in 0..blocks {
            let (rr, s, t) = if r.random_bool(0.7) {
                random_unbroken_params(&mut r, 0.05)
            } else {
                random_broken_params(&mut r, 0.05)
            };
            let h = dimer(rr, s, t);
            all_unbroken &= classify_symmetry(&h, &swap, 1e-10).unwrap().classification == Classification::Unbroken;
            spec.push(h, BlockFrame::Pt(swap.clone()));
        }
        let (h, frame) = direct_sum(&spec, 1e-10).unwrap();
        let report = classify_symmetry(&h, frame.pt_frame(), 1e-10).unwrap();
        prop_assert_eq!(report.classification == Classification::Unbroken, all_unbroken);
    }

    #[test]
    fn doubling_verdict_is_symmetry_of_h(seed in any::<u64>(), n in 1usize..6, symmetric in any::<bool>()) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        let h = if symmetric { &a + a.transpose() } else { a };
        let (doubled, frame, verdict) = doubling(&h, 1e-10).unwrap();
        prop_assert_eq!(doubled.nrows(), 2 * n);
        prop_assert_eq!(frame.dim(), 2 * n);
        prop_assert_eq!(verdict, (&h - h.transpose()).norm() <= 1e-12);
    }
}

#[test]
fn direct_sum_spectrum_is_union() {
    let mut r = rng(21);
    let swap = PtFrame64::pair_swap(2).unwrap();
    let mut spec = BlockSpec::new();
    let mut union = Vec::new();
    for _ in 0..3 {
        let (rr, s, t) = random_unbroken_params(&mut r, 0.05);
        let h = dimer(rr, s, t);
        union.extend(eigenvalues(&h).unwrap());
        spec.push(h, BlockFrame::Pt(swap.clone()));
    }
    let (h, _) = direct_sum(&spec, 1e-10).unwrap();
    assert!(multiset_distance(&union, &eigenvalues(&h).unwrap()) <= 1e-10);
    assert_eq!(h.nrows(), spec.dim());
    assert_eq!(h[(0, 2)], ComplexMatrix64::zeros(1, 1)[(0, 0)]);
}
