use hyperrec_core::axioms::{random_hypergraph, random_unit_tail};
use hyperrec_core::baselines::{b6_all_arcs, b7_overlapping_arcs};
use hyperrec_core::measure::reciprocity_of;
use hyperrec_core::search::{
    best_reciprocity, brute_force_reciprocity, exact_reciprocity, inverse_overlaps, reduced_space, search_profile, search_profile_counts,
    unit_tail_best,
};
use hyperrec_core::{ArcId, DirectedHypergraph, Hyperarc, ReciprocityConfig, SearchConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64, nodes: usize, arcs: usize, size: usize) -> DirectedHypergraph {
    random_hypergraph(&mut ChaCha8Rng::seed_from_u64(seed), nodes, arcs, size)
}

fn cfg(alpha: f64) -> ReciprocityConfig {
    ReciprocityConfig::new(alpha).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn omega_matches_linear_scan(seed in any::<u64>()) {
        let g = graph(seed, 12, 20, 4);
        for t in g.arc_ids() {
            let scan: Vec<ArcId> = g.arc_ids().filter(|&k| g.arc(t).inversely_overlaps(g.arc(k))).collect();
            prop_assert_eq!(inverse_overlaps(&g, t), scan);
        }
        prop_assert!(g.incidence_consistent());
    }

    // Ψ-only search can miss sets with two members of one group when α is
    // small (see group_search_matches_brute_force); from α = 0.5 up no such
    // case has turned up.
    #[test]
    fn representative_search_matches_brute_force(seed in any::<u64>(), alpha in prop::sample::select(vec![0.5, 1.0])) {
        let g = graph(seed, 9, 9, 3);
        let scfg = SearchConfig::default();
        for t in g.arc_ids() {
            let fast = best_reciprocity(&g, t, &cfg(alpha), &scfg).unwrap();
            let slow = brute_force_reciprocity(&g, t, &cfg(alpha), &scfg).unwrap();
            prop_assert!((fast.value - slow.value).abs() < 1e-12, "arc {} fast {} brute {}", t, fast.value, slow.value);
            // the reported set really attains the value
            if !fast.reciprocal_set.is_empty() {
                let set: Vec<&Hyperarc> = fast.reciprocal_set.iter().map(|&k| g.arc(k)).collect();
                let v = reciprocity_of(g.arc(t), &set, alpha).unwrap();
                prop_assert!((v - fast.value).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn group_search_matches_brute_force(seed in any::<u64>(), alpha in prop::sample::select(vec![1e-4, 0.1, 0.5, 1.0])) {
        let g = graph(seed, 9, 10, 3);
        let scfg = SearchConfig::default();
        for t in g.arc_ids() {
            let exact = exact_reciprocity(&g, t, &cfg(alpha), &scfg).unwrap();
            let slow = brute_force_reciprocity(&g, t, &cfg(alpha), &scfg).unwrap();
            prop_assert!((exact.value - slow.value).abs() < 1e-12);
            let psi_only = best_reciprocity(&g, t, &cfg(alpha), &scfg).unwrap();
            prop_assert!(psi_only.value <= exact.value + 1e-12);
        }
    }

    #[test]
    fn unit_tail_path_matches_exact_search(seed in any::<u64>(), alpha in prop::sample::select(vec![1e-4, 0.5, 1.0])) {
        let g = random_unit_tail(&mut ChaCha8Rng::seed_from_u64(seed), 10, 16, 4);
        for t in g.arc_ids() {
            let a = unit_tail_best(&g, t, &cfg(alpha)).unwrap();
            let b = best_reciprocity(&g, t, &cfg(alpha), &SearchConfig::default()).unwrap();
            prop_assert!((a.value - b.value).abs() < 1e-12);
        }
    }

    #[test]
    fn integer_and_count_evaluators_agree(seed in any::<u64>()) {
        let g = graph(seed, 10, 14, 4);
        let scfg = SearchConfig::default();
        for t in g.arc_ids() {
            let a = search_profile(&g, t, &scfg).unwrap();
            let b = search_profile_counts(&g, t, &scfg).unwrap();
            for alpha in [1e-4, 0.5, 1.0] {
                prop_assert!((a.resolve(alpha).value - b.resolve(alpha).value).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn representative_beats_its_group(seed in any::<u64>()) {
        let g = graph(seed, 8, 18, 3);
        for t in g.arc_ids() {
            let space = reduced_space(&g, t).unwrap();
            for members in space.groups.values() {
                let rep = members.iter().copied().min_by_key(|&k| (g.arc(k).head().len(), k)).unwrap();
                let r_rep = reciprocity_of(g.arc(t), &[g.arc(rep)], 1.0).unwrap();
                for &other in members {
                    let r_other = reciprocity_of(g.arc(t), &[g.arc(other)], 1.0).unwrap();
                    prop_assert!(r_rep >= r_other - 1e-12);
                }
            }
        }
    }

    #[test]
    fn maximum_dominates_fixed_sets(seed in any::<u64>()) {
        let g = graph(seed, 10, 12, 3);
        let c = cfg(1.0);
        for t in g.arc_ids() {
            let best = best_reciprocity(&g, t, &c, &SearchConfig::default()).unwrap().value;
            prop_assert!(best >= b6_all_arcs(&g, t, &c).unwrap() - 1e-12);
            prop_assert!(best >= b7_overlapping_arcs(&g, t, &c).unwrap() - 1e-12);
            prop_assert!((0.0..=1.0).contains(&best));
        }
    }
}

#[test]
fn perfect_reciprocal_always_scores_one() {
    for seed in 0..50 {
        let g = graph(seed, 10, 10, 4).with_perfect_reciprocals();
        for t in g.arc_ids() {
            let r = best_reciprocity(&g, t, &cfg(0.5), &SearchConfig::default()).unwrap();
            assert_eq!(r.value, 1.0);
            assert_eq!(r.reciprocal_set.len(), 1);
        }
    }
}
