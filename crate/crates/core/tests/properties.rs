mod common;

use common::{equivalent, random_graph, random_tree, shuffled_ids};
use dissim::document::{decode_graph, encode_graph, family_to_value, parse_family};
use dissim::generate::{generate, Target};
use dissim::graph::{is_tree_spanning, subgraph_weight};
use dissim::graphlike::implied_inequalities;
use dissim::rational::{format_rational, parse_rational};
use dissim::{
    check, classify, hat_vector, realize, steiner_brute, steiner_weight, DissimilarityFamily,
    Rational, RealizationClass, TerminalSet, VertexId,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=200, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn class_and_n() -> impl Strategy<Value = (RealizationClass, usize)> {
    (0usize..5, 3usize..=7).prop_map(|(c, n)| {
        let class = RealizationClass::ALL[c];
        if class == RealizationClass::GraphN4Internal {
            (class, 4)
        } else {
            (class, n)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_agrees_with_brute(seed: u64, size in 2u32..=9, extra in 0usize..12) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, size as usize - 1 + extra, 0);
        let k = r.gen_range(1..=size as usize);
        let t = TerminalSet::new(&g, shuffled_ids(&mut r, size)[..k].to_vec()).unwrap();
        let dp = steiner_weight(&g, &t).unwrap();
        let brute = steiner_brute(&g, &t).unwrap();
        prop_assert_eq!(&dp.weight, &brute.weight);
        prop_assert!(is_tree_spanning(&dp.witness, t.as_set()));
        prop_assert!(is_tree_spanning(&brute.witness, t.as_set()));
        prop_assert_eq!(subgraph_weight(&g, dp.witness.iter().copied()).unwrap().value, dp.weight);
    }

    #[test]
    fn witness_leaves_are_terminals(seed: u64, size in 3u32..=9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, 14, 0);
        let k = r.gen_range(2..=size as usize);
        let t = TerminalSet::new(&g, shuffled_ids(&mut r, size)[..k].to_vec()).unwrap();
        let dp = steiner_weight(&g, &t).unwrap();
        for v in g.vertices() {
            let degree = dp.witness.iter().filter(|e| e.other(v).is_some()).count();
            if degree == 1 {
                prop_assert!(t.as_set().contains(&v));
            }
        }
    }

    #[test]
    fn weights_are_monotone_and_subadditive(seed: u64, size in 3u32..=8) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, 14, 0);
        let ids = shuffled_ids(&mut r, size);
        let a = r.gen_range(1..size as usize);
        let b = r.gen_range(a..=size as usize);
        let small = TerminalSet::new(&g, ids[..a].to_vec()).unwrap();
        let large = TerminalSet::new(&g, ids[..b].to_vec()).unwrap();
        let ws = steiner_weight(&g, &small).unwrap().weight;
        let wl = steiner_weight(&g, &large).unwrap().weight;
        prop_assert!(ws <= wl);

        // Two sets sharing a vertex: the union is covered by both trees.
        let left = TerminalSet::new(&g, ids[..b].to_vec()).unwrap();
        let right = TerminalSet::new(&g, ids[b - 1..].to_vec()).unwrap();
        let union = TerminalSet::new(&g, ids.clone()).unwrap();
        let wu = steiner_weight(&g, &union).unwrap().weight;
        let sum = steiner_weight(&g, &left).unwrap().weight + steiner_weight(&g, &right).unwrap().weight;
        prop_assert!(wu <= sum);
    }

    #[test]
    fn scaling_scales_weights_and_keeps_witnesses(seed: u64, size in 2u32..=8, lambda in positive()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, 14, 0);
        let k = r.gen_range(1..=size as usize);
        let t = TerminalSet::new(&g, shuffled_ids(&mut r, size)[..k].to_vec()).unwrap();
        let base = steiner_weight(&g, &t).unwrap();
        let scaled = steiner_weight(&g.scaled(&lambda).unwrap(), &t).unwrap();
        prop_assert_eq!(scaled.weight, &base.weight * &lambda);
        prop_assert_eq!(scaled.witness, base.witness);
    }

    #[test]
    fn graph_documents_round_trip(seed: u64, size in 1u32..=9, n in 0usize..=9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, 16, n.min(size as usize));
        prop_assert_eq!(decode_graph(&encode_graph(&g)).unwrap(), g);
    }

    #[test]
    fn rationals_round_trip(p in -100_000i64..=100_000, q in 1i64..=5000) {
        let x = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn family_documents_round_trip(values in prop::collection::vec(positive(), 3..=8)) {
        let f = DissimilarityFamily::new(values).unwrap();
        let text = serde_json::to_string(&family_to_value(&f)).unwrap();
        prop_assert_eq!(parse_family(&text).unwrap(), f);
    }

    #[test]
    fn tree_hat_families_pass_tree_checkers(seed: u64, n in 3usize..=7, extra in 0u32..=4) {
        let mut r = rng(seed);
        let size = n as u32 + extra;
        let t = random_tree(&mut r, size, n);
        let f = hat_vector(&t).unwrap();
        prop_assert!(check(RealizationClass::TreeVertices, &f).passed());
        if extra == 0 {
            prop_assert!(check(RealizationClass::TreeExact, &f).passed());
        }
    }

    #[test]
    fn graph_hat_families_pass_graph_checkers(seed: u64, n in 3usize..=7, extra in 0u32..=4) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n as u32, 16, n);
        prop_assert!(check(RealizationClass::GraphExact, &hat_vector(&g).unwrap()).passed());
        let h = random_graph(&mut r, 4 + extra, 16, 4);
        prop_assert!(check(RealizationClass::GraphN4Internal, &hat_vector(&h).unwrap()).passed());
    }

    #[test]
    fn nonnegative_slacks_imply_subset_sums(base in positive(), steps in prop::collection::vec(0i64..=12, 3..=8)) {
        // Values in [L, L + L/(n-2)] have non-negative slacks; the upper edge is tight.
        let n = steps.len() as i64;
        let values = steps
            .iter()
            .map(|&t| &base + &base * Rational::new(t.into(), (12 * (n - 2)).into()))
            .collect();
        let f = DissimilarityFamily::new(values).unwrap();
        prop_assert!(f.slacks().iter().all(|s| *s >= Rational::zero()));
        for k in 1..=f.n() - 2 {
            prop_assert!(implied_inequalities(&f, k).unwrap().passed());
        }
    }

    #[test]
    fn verdicts_ignore_order_and_scale(values in prop::collection::vec(positive(), 3..=7), seed: u64, lambda in positive()) {
        let f = DissimilarityFamily::new(values).unwrap();
        let sigma = common::random_permutation(&mut rng(seed), f.n());
        let base: Vec<bool> = classify(&f).iter().map(|(_, v)| v.passed()).collect();
        let permuted: Vec<bool> = classify(&f.permuted(&sigma)).iter().map(|(_, v)| v.passed()).collect();
        let scaled: Vec<bool> = classify(&f.scaled(&lambda).unwrap()).iter().map(|(_, v)| v.passed()).collect();
        prop_assert_eq!(&base, &permuted);
        prop_assert_eq!(&base, &scaled);
    }

    #[test]
    fn generated_families_realize_exactly((class, n) in class_and_n(), seed: u64) {
        let f = generate(n, Target::Class(class), seed, 1).unwrap().remove(0);
        let r = realize(class, &f).unwrap();
        prop_assert_eq!(hat_vector(&r.graph).unwrap(), f.clone());
        for v in r.internal_vertices() {
            prop_assert!(v.0 as usize > n);
        }
        prop_assert!(r.graph.external().iter().copied().eq((1..=n as u32).map(VertexId)));
    }

    #[test]
    fn constructions_are_equivariant((class, n) in class_and_n(), seed: u64, lambda in positive()) {
        let f = generate(n, Target::Class(class), seed, 1).unwrap().remove(0);
        let sigma = common::random_permutation(&mut rng(seed ^ 0x5eed), n);
        let fp = f.permuted(&sigma);
        let r = realize(class, &f).unwrap();
        let rp = realize(class, &fp).unwrap();
        prop_assert!(equivalent(&r.graph, &f, &rp.graph, &fp));
        let rs = realize(class, &f.scaled(&lambda).unwrap()).unwrap();
        prop_assert_eq!(rs.graph, r.graph.scaled(&lambda).unwrap());
    }

    #[test]
    fn failing_families_are_not_realized(values in prop::collection::vec(positive(), 3..=6)) {
        let f = DissimilarityFamily::new(values).unwrap();
        for (class, verdict) in classify(&f) {
            prop_assert_eq!(realize(class, &f).is_ok(), verdict.passed());
        }
    }
}
