//! Randomized structural invariants, driven by proptest.

use proptest::prelude::*;

use pflab::families::{complete, complete_bipartite, cycle, petersen, vyalyi_block};
use pflab::graph::Graph;
use pflab::limits::Limits;
use pflab::orientation::{
    alternating_cycles, are_similar, cycle_sign, matching_sign, sign_vector, Orientation,
};
use pflab::symbolic::SymbolicLabeling;

fn corpus_graph() -> impl Strategy<Value = Graph> {
    prop_oneof![
        Just(cycle(4)),
        Just(cycle(6)),
        Just(cycle(8)),
        Just(complete(4)),
        Just(complete(6)),
        Just(complete_bipartite(2, 2)),
        Just(complete_bipartite(3, 3)),
        Just(complete_bipartite(4, 4)),
        Just(petersen()),
        Just(vyalyi_block().0),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// M triangle N always splits into vertex-disjoint even cycles that
    /// reconstruct N from M.
    #[test]
    fn symmetric_difference_decomposes((g, pick) in corpus_graph().prop_flat_map(|g| {
        let strategy = (0usize..64, 0usize..64);
        (Just(g), strategy)
    })) {
        let matchings = g.enumerate_perfect_matchings().unwrap();
        let m = &matchings[pick.0 % matchings.len()];
        let n = &matchings[pick.1 % matchings.len()];
        let cycles = alternating_cycles(&g, m, n);
        let mut union: Vec<usize> = cycles.iter().flat_map(|q| q.edge_ids().to_vec()).collect();
        union.sort_unstable();
        let mut diff = m.symmetric_difference(n);
        diff.sort_unstable();
        prop_assert_eq!(union, diff);
        for q in &cycles {
            prop_assert_eq!(q.len() % 2, 0);
        }
    }

    /// Every perfect matching meets every cut with the parity of the shore.
    #[test]
    fn cut_parity((g, mask) in corpus_graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), 1usize..(1 << n) - 1)
    })) {
        let shore: Vec<usize> = (0..g.vertex_count()).filter(|&v| mask >> v & 1 == 1).collect();
        let cut = g.make_cut(&shore).unwrap();
        for m in g.enumerate_perfect_matchings().unwrap() {
            let crossing = m.edge_ids().iter().filter(|e| cut.edge_ids().contains(e)).count();
            prop_assert_eq!(crossing % 2, shore.len() % 2);
        }
    }

    /// Sign ratio of two orientations on one matching counts flipped
    /// matched edges; cycle-product identity for two matchings.
    #[test]
    fn sign_identities((g, bits1, bits2, pick) in corpus_graph().prop_flat_map(|g| {
        let m = g.edge_count();
        (
            Just(g),
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(any::<bool>(), m),
            (0usize..64, 0usize..64),
        )
    })) {
        let d1 = Orientation::from_bits(bits1);
        let d2 = Orientation::from_bits(bits2);
        let matchings = g.enumerate_perfect_matchings().unwrap();
        let m = &matchings[pick.0 % matchings.len()];
        let n = &matchings[pick.1 % matchings.len()];
        let flipped = m.edge_ids().iter()
            .filter(|&&e| d1.is_reversed(e) != d2.is_reversed(e)).count();
        let lhs = matching_sign(&g, &d1, m).unwrap() as i32
            * matching_sign(&g, &d2, m).unwrap() as i32;
        prop_assert_eq!(lhs, if flipped % 2 == 0 { 1 } else { -1 });
        let product: i32 = alternating_cycles(&g, m, n).iter()
            .map(|q| cycle_sign(&g, &d1, q).unwrap() as i32).product();
        let pair = matching_sign(&g, &d1, m).unwrap() as i32
            * matching_sign(&g, &d1, n).unwrap() as i32;
        prop_assert_eq!(pair, product);
    }

    /// Reversing a cut yields a similar orientation whose sign vector is a
    /// global flip by shore parity.
    #[test]
    fn similarity_under_cut_reversal((g, bits, mask) in corpus_graph().prop_flat_map(|g| {
        let m = g.edge_count();
        let n = g.vertex_count();
        (Just(g), proptest::collection::vec(any::<bool>(), m), 1usize..(1 << n) - 1)
    })) {
        let d = Orientation::from_bits(bits);
        let shore: Vec<usize> = (0..g.vertex_count()).filter(|&v| mask >> v & 1 == 1).collect();
        let cut = g.make_cut(&shore).unwrap();
        let d2 = d.reverse(cut.edge_ids());
        prop_assert!(are_similar(&g, &d, &d2));
        let matchings = g.enumerate_perfect_matchings().unwrap();
        let v1 = sign_vector(&g, &d, &matchings).unwrap();
        let v2 = sign_vector(&g, &d2, &matchings).unwrap();
        let flip: i32 = if shore.len() % 2 == 0 { 1 } else { -1 };
        prop_assert!(v1.iter().zip(&v2).all(|(a, b)| *a as i32 * flip == *b as i32));
    }

    /// Labels extend linearly over symmetric differences: relabeling a
    /// matching along an alternating cycle XORs the cycle's labels in.
    #[test]
    fn tau_extends_linearly((g, labels, pick) in corpus_graph().prop_flat_map(|g| {
        let m = g.edge_count();
        (
            Just(g),
            proptest::collection::vec(0u64..16, m),
            (0usize..64, 0usize..64),
        )
    })) {
        let l = SymbolicLabeling::new(4, labels, &Limits::default()).unwrap();
        let matchings = g.enumerate_perfect_matchings().unwrap();
        let m = &matchings[pick.0 % matchings.len()];
        let n = &matchings[pick.1 % matchings.len()];
        let cycles_xor = alternating_cycles(&g, m, n).iter()
            .flat_map(|q| q.edge_ids().to_vec())
            .fold(0u64, |acc, e| acc ^ l.label(e));
        prop_assert_eq!(l.of_matching(m) ^ cycles_xor, l.of_matching(n));
    }

    /// Retracting twice changes nothing: the retract has no degree-2
    /// vertices left.
    #[test]
    fn retract_is_idempotent(g in corpus_graph()) {
        let r = g.retract();
        let rr = r.retract();
        prop_assert_eq!(r.vertex_count(), rr.vertex_count());
        prop_assert_eq!(r.edge_count(), rr.edge_count());
        if r.vertex_count() > 2 {
            prop_assert!((0..r.vertex_count()).all(|v| r.degree(v) != 2));
        }
    }
}

/// Graph parsing round-trips on the whole corpus.
#[test]
fn parse_roundtrip_corpus() {
    for g in [cycle(4), cycle(8), complete(6), complete_bipartite(4, 4), petersen()] {
        let text = g.to_edge_list();
        let back = Graph::parse(&text).unwrap();
        assert_eq!(back.vertex_count(), g.vertex_count());
        assert_eq!(back.edges(), g.edges());
    }
}
