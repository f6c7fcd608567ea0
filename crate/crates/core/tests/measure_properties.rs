mod common;

use common::{l1_direct, random_local_unitaries};
use gme_coherence::measures::{
    c_alpha, coherence_pure, e_f_gamma_pure, e_max_pure, e_min_gme_pure, eval_f, g_geo_gme_pure,
    l1_coherence, ConcaveFunction,
};
use gme_coherence::random::random_pure_state;
use gme_coherence::state::{enumerate_bipartitions, schmidt_vector, CVector, PureState};
use proptest::prelude::*;

const KINDS: [ConcaveFunction; 3] = ConcaveFunction::ALL_DEFAULT;

fn simplex(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, len).prop_filter_map("nonzero", |raw| {
        let s: f64 = raw.iter().sum();
        (s > 1e-6).then(|| raw.iter().map(|x| x / s).collect())
    })
}

fn f_strategy() -> impl Strategy<Value = ConcaveFunction> {
    prop::sample::select(vec![
        ConcaveFunction::Concurrence,
        ConcaveFunction::Gbc { d_min: 2 },
        ConcaveFunction::Gbc { d_min: 3 },
        ConcaveFunction::Gbc { d_min: 4 },
        ConcaveFunction::ShannonEntropy,
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn concave_on_the_simplex(f in f_strategy(), p in simplex(4), q in simplex(4), t in 0.0f64..=1.0) {
        let mix: Vec<f64> = p.iter().zip(&q).map(|(a, b)| t * a + (1.0 - t) * b).collect();
        let lhs = eval_f(f, &mix).unwrap();
        let rhs = t * eval_f(f, &p).unwrap() + (1.0 - t) * eval_f(f, &q).unwrap();
        prop_assert!(lhs >= rhs - 1e-12, "{} < {}", lhs, rhs);
    }

    #[test]
    fn symmetric_under_permutation(f in f_strategy(), p in simplex(5), shift in 0usize..5) {
        let mut q = p.clone();
        q.rotate_left(shift);
        q.swap(0, 4);
        prop_assert!((eval_f(f, &p).unwrap() - eval_f(f, &q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn vanishes_only_at_vertices(f in f_strategy(), k in 0usize..4, p in simplex(4)) {
        let mut vertex = vec![0.0; 4];
        vertex[k] = 1.0;
        prop_assert!(eval_f(f, &vertex).unwrap().abs() < 1e-15);
        if p.iter().cloned().fold(0.0, f64::max) < 1.0 - 1e-6 {
            prop_assert!(eval_f(f, &p).unwrap() > 0.0);
        }
    }

    #[test]
    fn min_geo_max_ordering(dims in prop::collection::vec(2usize..=3, 2..=4), seed in any::<u64>()) {
        let psi = random_pure_state(&dims, seed).unwrap();
        for f in KINDS {
            let lo = e_min_gme_pure(f, &psi).unwrap();
            let mid = g_geo_gme_pure(f, &psi).unwrap();
            let hi = e_max_pure(f, &psi).unwrap();
            prop_assert!(lo <= mid + 1e-9 && mid <= hi + 1e-9, "{} {} {}", lo, mid, hi);
        }
    }

    #[test]
    fn gamma_measures_are_local_unitary_invariant(dims in prop::collection::vec(2usize..=3, 2..=3), seed in any::<u64>(), useed in any::<u64>()) {
        let psi = random_pure_state(&dims, seed).unwrap();
        let moved = random_local_unitaries(&psi, useed);
        for b in enumerate_bipartitions(dims.len()).unwrap() {
            for f in KINDS {
                let a = e_f_gamma_pure(f, &psi, &b).unwrap();
                let c = e_f_gamma_pure(f, &moved, &b).unwrap();
                prop_assert!((a - c).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn qubit_concurrence_coherence_is_l1(seed in any::<u64>()) {
        let psi = random_pure_state(&[2], seed).unwrap();
        let a = psi.amplitudes();
        let closed = 2.0 * (a[0] * a[1]).norm();
        let c = coherence_pure(ConcaveFunction::Concurrence, &psi);
        prop_assert!((c - l1_coherence(&psi.to_density())).abs() < 1e-12);
        prop_assert!((c - closed).abs() < 1e-12);
        prop_assert!((l1_coherence(&psi.to_density()) - l1_direct(psi.to_density().matrix())).abs() < 1e-12);
    }

    #[test]
    fn product_states_have_zero_min_gme(da in 2usize..=3, db in 2usize..=3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let psi = random_pure_state(&[da], s1).unwrap().kron(&random_pure_state(&[db, 2], s2).unwrap());
        let some_product = enumerate_bipartitions(3).unwrap().iter().any(|b| {
            schmidt_vector(&psi, b).unwrap()[0] > 1.0 - 1e-9
        });
        prop_assert!(some_product);
        for f in KINDS {
            prop_assert!(e_min_gme_pure(f, &psi).unwrap().abs() < 1e-6);
        }
    }
}

#[test]
fn entangled_across_every_split_means_positive_min_gme() {
    for seed in 0..200 {
        let psi = random_pure_state(&[2, 3, 2], seed).unwrap();
        let no_product = enumerate_bipartitions(3)
            .unwrap()
            .iter()
            .all(|b| schmidt_vector(&psi, b).unwrap()[0] < 1.0 - 1e-9);
        assert!(no_product);
        for f in KINDS {
            assert!(e_min_gme_pure(f, &psi).unwrap() > 0.0);
        }
    }
}

#[test]
fn c_alpha_counts_bipartitions() {
    for n in 2..=10 {
        assert_eq!(c_alpha(n).unwrap() as usize, enumerate_bipartitions(n).unwrap().len());
        assert_eq!(c_alpha(n).unwrap(), (1u64 << (n - 1)) - 1);
    }
}

#[test]
fn ghz_values_by_hand() {
    // Every split of GHZ_n has Schmidt vector (1/2, 1/2).
    for n in 2..=5 {
        let psi = PureState::ghz(n);
        assert!((e_min_gme_pure(ConcaveFunction::Concurrence, &psi).unwrap() - 1.0).abs() < 1e-12);
        assert!((g_geo_gme_pure(ConcaveFunction::ShannonEntropy, &psi).unwrap() - 1.0).abs() < 1e-12);
    }
    let amps = CVector::from_vec(vec![common::c(0.6, 0.0), common::c(0.0, 0.8)]);
    let psi = PureState::new(vec![2], amps).unwrap();
    assert!((coherence_pure(ConcaveFunction::Concurrence, &psi) - 0.96).abs() < 1e-12);
}
