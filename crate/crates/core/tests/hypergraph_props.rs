mod common;

use common::{brute_transversals, set};
use proptest::prelude::*;
use wtd::hypergraph::{
    all_minimal_transversals_have_size_k, enumerate_bounded_minimal_transversals,
    enumerate_minimal_transversals, SizeVerdict, SpernerFamily,
};
use wtd::VertexSet;

/// Random Sperner family: raw nonempty sets over `0..ground`, minimized.
fn family(max_ground: usize, max_edges: usize) -> impl Strategy<Value = SpernerFamily> {
    (1..=max_ground).prop_flat_map(move |ground| {
        prop::collection::vec(1u64..(1u64 << ground), 1..=max_edges)
            .prop_map(move |raw| SpernerFamily::minimize(ground, raw.into_iter().map(VertexSet::from_bits)).unwrap())
    })
}

fn is_antichain(sets: &[VertexSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets.iter().enumerate().all(|(j, b)| i == j || !a.is_subset(*b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn duality_is_an_involution(h in family(8, 8)) {
        let t = enumerate_minimal_transversals(&h);
        prop_assert_eq!(enumerate_minimal_transversals(&t), h);
    }

    #[test]
    fn outputs_are_antichains(h in family(10, 8), k in 1usize..6) {
        prop_assert!(is_antichain(enumerate_minimal_transversals(&h).edges()));
        prop_assert!(is_antichain(enumerate_bounded_minimal_transversals(&h, k).edges()));
    }

    #[test]
    fn matches_subset_lattice(h in family(10, 7)) {
        let expected = brute_transversals(h.ground(), h.edges());
        let mut got = enumerate_minimal_transversals(&h).edges().to_vec();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn bounded_is_the_small_part(h in family(9, 7), k in 1usize..10) {
        let full = enumerate_minimal_transversals(&h);
        let want: Vec<VertexSet> = full.edges().iter().copied().filter(|t| t.len() <= k).collect();
        let bounded = enumerate_bounded_minimal_transversals(&h, k);
        prop_assert_eq!(bounded.edges(), &want[..]);
        prop_assert_eq!(enumerate_bounded_minimal_transversals(&h, h.ground()), full);
    }

    #[test]
    fn size_decision_matches_enumeration(h in family(10, 7), k in 1usize..7) {
        let full = brute_transversals(h.ground(), h.edges());
        let expect = !full.is_empty() && full.iter().all(|t| t.len() == k);
        let d = all_minimal_transversals_have_size_k(&h, k);
        prop_assert_eq!(d.holds(), expect);
        prop_assert!(full.contains(&d.certificate), "certificate {} is not a minimal transversal", d.certificate);
        match d.verdict {
            SizeVerdict::AllSizeK => prop_assert_eq!(d.certificate.len(), k),
            SizeVerdict::Smaller => prop_assert!(d.certificate.len() < k),
            SizeVerdict::Larger => prop_assert!(d.certificate.len() > k),
        }
    }
}

#[test]
fn spec_examples() {
    let two_pairs = SpernerFamily::new(4, [set(&[0, 1]), set(&[2, 3])]).unwrap();
    assert!(enumerate_bounded_minimal_transversals(&two_pairs, 1).is_empty());
    assert_eq!(enumerate_bounded_minimal_transversals(&two_pairs, 2).len(), 4);
    assert!(all_minimal_transversals_have_size_k(&two_pairs, 2).holds());

    let star = SpernerFamily::new(4, [set(&[0]), set(&[1, 2, 3])]).unwrap();
    assert!(all_minimal_transversals_have_size_k(&star, 2).holds());

    // open neighborhoods of P5, minimized: {1}, {0,2}, {1,3}, {2,4}, {3}
    let hp5 = SpernerFamily::minimize(5, [set(&[1]), set(&[0, 2]), set(&[1, 3]), set(&[2, 4]), set(&[3])]).unwrap();
    assert_eq!(enumerate_bounded_minimal_transversals(&hp5, 3).edges(), &[set(&[1, 2, 3])]);
    let d = all_minimal_transversals_have_size_k(&hp5, 3);
    assert!(!d.holds());
    assert_eq!(d.certificate, set(&[0, 1, 3, 4]));
}
