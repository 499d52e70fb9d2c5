// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use qmslab::entropic::{relative_entropy, renyi_divergence, SupportPolicy};
use qmslab::fixed_point::schur_weyl_blocks;
use qmslab::linalg::random_density;
use qmslab::rep::{char_rep, weyl_rep};
use qmslab::semigroup::{quantum_spectral_gap, transferred_lindbladian, Propagator};
use qmslab::{ClassicalGenerator, FiniteGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn symmetric(rates: &[f64], group: &FiniteGroup) -> Vec<f64> {
    let mut out = vec![0.0; group.order];
    for g in group.elements() {
        let inv = group.inverse(g);
        if g != group.identity && inv >= g {
            out[g] = rates[g];
            out[inv] = rates[g];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_is_a_probability_density(n in 2usize..8, t in 0.0f64..5.0, raw in prop::collection::vec(0.0f64..2.0, 8)) {
        let group = FiniteGroup::cyclic(n).unwrap();
        let gen = ClassicalGenerator::new(group, &raw[..n]).unwrap();
        let k = gen.kernel_at(t).unwrap();
        prop_assert!((k.mean() - 1.0).abs() < 1e-10);
        prop_assert!(k.values.iter().all(|v| *v >= -1e-12));
    }

    #[test]
    fn gap_transfers_on_cyclic_groups(n in 2usize..7, raw in prop::collection::vec(0.05f64..1.0, 7)) {
        let rep = char_rep(n).unwrap();
        let gen = ClassicalGenerator::new(rep.group.clone(), &symmetric(&raw[..n], &rep.group)).unwrap();
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        prop_assert!(quantum_spectral_gap(&lind).unwrap() >= gen.spectral_gap().unwrap() - 1e-8);
    }

    #[test]
    fn transferred_channels_are_unital_and_completely_positive(
        n in 2usize..4,
        t in 0.0f64..4.0,
        raw in prop::collection::vec(0.0f64..1.0, 9),
    ) {
        let rep = weyl_rep(n).unwrap();
        let gen = ClassicalGenerator::new(rep.group.clone(), &raw[..n * n]).unwrap();
        let channel = Propagator::new(&transferred_lindbladian(&rep, &gen).unwrap()).unwrap().channel(t).unwrap();
        prop_assert!(channel.unitality_defect() < 1e-10);
        prop_assert!(channel.min_choi_eigenvalue() > -1e-9);
    }

    #[test]
    fn renyi_divergences_are_ordered(d in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(d, &mut rng);
        let sigma = random_density(d, &mut rng);
        let div = |p: f64| renyi_divergence(&rho, &sigma, p, SupportPolicy::Strict).unwrap();
        let (d1, d2, dinf) = (div(1.0), div(2.0), div(f64::INFINITY));
        prop_assert!(d1 >= -1e-10);
        prop_assert!(d1 <= d2 + 1e-9 && d2 <= dinf + 1e-9);
        prop_assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-9);
    }

    #[test]
    fn group_json_round_trips(n in 1usize..12) {
        let g = FiniteGroup::cyclic(n).unwrap();
        prop_assert_eq!(FiniteGroup::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn schur_weyl_blocks_fill_the_tensor_power(n in 1usize..8, d in 1usize..5) {
        let blocks = schur_weyl_blocks(n, d).unwrap();
        let dim: usize = blocks.iter().map(|(m, k)| m * k).sum();
        prop_assert_eq!(dim, d.pow(n as u32));
    }
}
