//! Property-based invariants: algebraic laws of the graph operations,
//! consistency of the intersection construction, and monotonicity of the
//! increasing properties under edge thinning.

use proptest::prelude::*;
use rigraph::props::{
    hamilton_solve, has_perfect_matching, is_connected, is_k_connected, min_degree_at_least,
    HamiltonBudget, HamiltonStatus,
};
use rigraph::{DrawSequence, FeatureAssignment, Graph};

fn pairs(n: usize) -> Vec<(u32, u32)> {
    (0..n as u32)
        .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
        .collect()
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let edges = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, e)| e);
    Graph::from_edges(n, edges).unwrap()
}

/// (n, full mask, submask) with submask ⊆ mask, n <= 8.
fn graph_pair() -> impl Strategy<Value = (usize, u32, u32)> {
    (1usize..=8, any::<u32>(), any::<u32>()).prop_map(|(n, mask, sub)| {
        let bits = (n * (n - 1) / 2) as u32;
        let mask = mask & ((1u32 << bits) - 1);
        (n, mask, mask & sub)
    })
}

proptest! {
    #[test]
    fn union_laws((n, a, b) in graph_pair(), c in any::<u32>()) {
        let bits = (n * (n - 1) / 2) as u32;
        let c = c & ((1u32 << bits) - 1);
        let (ga, gb, gc) = (
            graph_from_mask(n, a),
            graph_from_mask(n, b),
            graph_from_mask(n, c),
        );
        // commutative, associative, idempotent
        prop_assert_eq!(ga.union(&gb).unwrap(), gb.union(&ga).unwrap());
        prop_assert_eq!(
            ga.union(&gb).unwrap().union(&gc).unwrap(),
            ga.union(&gb.union(&gc).unwrap()).unwrap()
        );
        prop_assert_eq!(ga.union(&ga).unwrap(), ga.clone());
        // union is the mask union
        prop_assert_eq!(ga.union(&gb).unwrap(), graph_from_mask(n, a | b));
    }

    #[test]
    fn subgraph_of_union((n, a, b) in graph_pair()) {
        let (ga, gb) = (graph_from_mask(n, a), graph_from_mask(n, b));
        let u = ga.union(&gb).unwrap();
        prop_assert!(ga.is_subgraph_of(&u).unwrap());
        prop_assert!(gb.is_subgraph_of(&u).unwrap());
    }

    #[test]
    fn draw_prefix_is_subgraph(n in 2usize..=6, idxs in proptest::collection::vec(0usize..15, 0..20), k in 0usize..20) {
        let all = pairs(n);
        let draws: Vec<(u32, u32)> = idxs.into_iter().map(|i| all[i % all.len()]).collect();
        let seq = DrawSequence::new(n, draws).unwrap();
        let k = k.min(seq.len());
        // collapse is idempotent under repetition and monotone in the prefix
        prop_assert!(seq.prefix(k).collapse().is_subgraph_of(&seq.collapse()).unwrap());
        prop_assert_eq!(seq.prefix(seq.len()).collapse(), seq.collapse());
    }

    #[test]
    fn intersection_graph_matches_pairwise(
        features in proptest::collection::vec(0u8..=255, 1..=8),
    ) {
        let n = features.len();
        let sets: Vec<Vec<u64>> = features
            .iter()
            .map(|&mask| (0..8).filter(|w| mask & (1 << w) != 0).collect())
            .collect();
        let a = FeatureAssignment::from_features(n, 8, sets.clone()).unwrap();
        let g = a.intersection_graph();
        for u in 0..n {
            for v in (u + 1)..n {
                let share = sets[u].iter().any(|w| sets[v].contains(w));
                prop_assert_eq!(g.has_edge(u as u32, v as u32), share);
            }
        }
    }

    #[test]
    fn increasing_properties_monotone((n, mask, sub) in graph_pair()) {
        let big = graph_from_mask(n, mask);
        let small = graph_from_mask(n, sub);
        if is_connected(&small) {
            prop_assert!(is_connected(&big));
        }
        for k in 1..=3 {
            if is_k_connected(&small, k) {
                prop_assert!(is_k_connected(&big, k));
            }
        }
        if has_perfect_matching(&small) {
            prop_assert!(has_perfect_matching(&big));
        }
        if n >= 3 {
            let budget = HamiltonBudget { restarts: 0, ..HamiltonBudget::default() };
            let s = hamilton_solve(&small, &budget).unwrap();
            let b = hamilton_solve(&big, &budget).unwrap();
            if s.status == HamiltonStatus::Yes {
                prop_assert_eq!(b.status, HamiltonStatus::Yes);
            }
        }
    }

    #[test]
    fn necessary_conditions((n, mask, _) in graph_pair()) {
        let g = graph_from_mask(n, mask);
        for k in 1..=3 {
            if is_k_connected(&g, k) {
                prop_assert!(min_degree_at_least(&g, k));
            }
        }
        if has_perfect_matching(&g) && n > 0 {
            prop_assert!(min_degree_at_least(&g, 1));
        }
        if n >= 3 {
            let budget = HamiltonBudget { restarts: 0, ..HamiltonBudget::default() };
            let v = hamilton_solve(&g, &budget).unwrap();
            if v.status == HamiltonStatus::Yes {
                prop_assert!(is_k_connected(&g, 2));
            }
        }
    }
}
