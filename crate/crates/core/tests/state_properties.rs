mod common;

use common::{random_local_unitaries, schmidt_by_svd, spectra_close};
use gme_coherence::io::{density_to_json, parse_state, pure_to_json};
use gme_coherence::random::{random_density_matrix, random_pure_state};
use gme_coherence::state::{enumerate_bipartitions, partial_trace, schmidt_vector, Bipartition};
use proptest::prelude::*;

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 2..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn schmidt_vector_is_a_probability_vector(dims in dims_strategy(), seed in any::<u64>()) {
        let psi = random_pure_state(&dims, seed).unwrap();
        for b in enumerate_bipartitions(dims.len()).unwrap() {
            let s = schmidt_vector(&psi, &b).unwrap();
            prop_assert!(s.iter().all(|&x| x >= 0.0));
            prop_assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn schmidt_vector_matches_svd_on_both_sides(dims in dims_strategy(), seed in any::<u64>()) {
        let psi = random_pure_state(&dims, seed).unwrap();
        for b in enumerate_bipartitions(dims.len()).unwrap() {
            let s = schmidt_vector(&psi, &b).unwrap();
            prop_assert!(spectra_close(&s, &schmidt_by_svd(&psi, b.gamma()), 1e-9));
            prop_assert!(spectra_close(&s, &schmidt_by_svd(&psi, &b.complement()), 1e-9));
        }
    }

    #[test]
    fn schmidt_vector_is_local_unitary_invariant(dims in dims_strategy(), seed in any::<u64>(), useed in any::<u64>()) {
        let psi = random_pure_state(&dims, seed).unwrap();
        let moved = random_local_unitaries(&psi, useed);
        for b in enumerate_bipartitions(dims.len()).unwrap() {
            let before = schmidt_vector(&psi, &b).unwrap();
            let after = schmidt_vector(&moved, &b).unwrap();
            prop_assert!(spectra_close(&before, &after, 1e-9));
        }
    }

    #[test]
    fn partial_trace_keeps_trace_and_hermiticity(dims in dims_strategy(), rank in 1usize..4, seed in any::<u64>(), mask in 1u32..15) {
        let rho = random_density_matrix(&dims, rank, seed).unwrap();
        let keep: Vec<usize> = (1..=dims.len()).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        prop_assume!(!keep.is_empty());
        let red = partial_trace(&rho, &keep).unwrap();
        prop_assert!((red.trace().re - 1.0).abs() < 1e-10);
        prop_assert!(red.trace().im.abs() < 1e-10);
        let m = red.matrix();
        prop_assert!((m - m.adjoint()).norm() < 1e-10);
    }

    #[test]
    fn json_round_trip_is_exact(dims in prop::collection::vec(2usize..=3, 1..=3), rank in 1usize..4, seed in any::<u64>()) {
        let rank = rank.min(dims.iter().product());
        let rho = random_density_matrix(&dims, rank, seed).unwrap();
        let back = parse_state(&density_to_json(&rho)).unwrap().to_density();
        prop_assert_eq!(back.matrix(), rho.matrix());
        prop_assert_eq!(back.dims(), rho.dims());
        let psi = random_pure_state(&dims, seed).unwrap();
        let back = parse_state(&pure_to_json(&psi)).unwrap().as_pure().unwrap();
        prop_assert_eq!(back.amplitudes(), psi.amplitudes());
    }
}

#[test]
fn bipartitions_are_distinct_and_contain_party_one() {
    for n in 2..=8 {
        let all = enumerate_bipartitions(n).unwrap();
        assert_eq!(all.len(), (1 << (n - 1)) - 1);
        for (i, b) in all.iter().enumerate() {
            assert!(b.gamma().contains(&1));
            assert!(all[..i].iter().all(|other| other != b));
            assert_eq!(*b, Bipartition::new(&b.complement(), n).unwrap());
        }
    }
}
