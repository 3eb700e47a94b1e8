mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{all_graphs, all_labeled_graphs, brute_certificate, brute_class_count, has_kuratowski_subdivision, isomorphic};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wtd::canon::{canonical_form, canonical_form_bounded};
use wtd::format::{parse_graph, write_graph, Format};
use wtd::planarity::is_planar;
use wtd::search::{enumerate_graphs, SearchFilter};
use wtd::{EdgeSet, Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=n * 2).prop_map(move |pairs| {
            let edges: EdgeSet = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, edges.iter()).unwrap()
        })
    })
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

proptest! {
    #[test]
    fn formats_round_trip(g in graph(20)) {
        for f in [Format::EdgeList, Format::Graph6] {
            let text = write_graph(&g, f);
            let back = parse_graph(&text, f).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back, f), text);
        }
    }

    #[test]
    fn girth_absent_iff_forest(g in graph(12)) {
        let forest = g.edge_count() == g.n() - g.components().len();
        prop_assert_eq!(g.girth().is_none(), forest);
    }

    #[test]
    fn diameter_one_iff_complete(g in graph(9)) {
        prop_assume!(g.n() >= 2);
        let complete = g.edge_count() == g.n() * (g.n() - 1) / 2;
        prop_assert_eq!(g.diameter() == Some(1), complete);
    }

    #[test]
    fn deleting_closed_neighborhood(g in graph(14), bits in any::<u64>()) {
        let a = VertexSet::from_bits(bits) & g.vertices();
        let (h, map) = g.delete_closed_neighborhood(a);
        let kept: VertexSet = map.iter().copied().collect();
        prop_assert_eq!(kept, g.vertices() - g.closed_neighborhood_of(a));
        for (u, v) in g.edges() {
            let (iu, iv) = (map.iter().position(|&x| x == u), map.iter().position(|&x| x == v));
            if let (Some(iu), Some(iv)) = (iu, iv) {
                prop_assert!(h.has_edge(iu, iv));
            }
        }
        prop_assert_eq!(h.edge_count(), g.induced_subgraph(kept).0.edge_count());
    }
}

#[test]
fn canonical_form_matches_permutation_oracle() {
    for n in 1..=5 {
        let mut by_cert: BTreeMap<Vec<bool>, BTreeSet<Vec<u8>>> = BTreeMap::new();
        for g in all_labeled_graphs(n) {
            by_cert.entry(brute_certificate(&g)).or_default().insert(canonical_form(&g).unwrap());
        }
        assert!(by_cert.values().all(|forms| forms.len() == 1), "n={n}");
        let forms: BTreeSet<_> = by_cert.values().flatten().collect();
        assert_eq!(forms.len(), by_cert.len(), "n={n}");
    }
}

#[test]
fn canonical_form_on_random_six_vertex_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut perm: Vec<usize> = (0..6).collect();
    for _ in 0..300 {
        let a = random_graph(&mut rng, 6);
        perm.shuffle(&mut rng);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&a.relabel(&perm)).unwrap());
        let b = random_graph(&mut rng, 6);
        assert_eq!(canonical_form(&a).unwrap() == canonical_form(&b).unwrap(), isomorphic(&a, &b));
    }
}

#[test]
fn canonical_form_examples() {
    use wtd::graph::named::*;
    assert_ne!(canonical_form(&path(4)).unwrap(), canonical_form(&star(3)).unwrap());
    let four: BTreeSet<_> = all_graphs(4).iter().map(|g| canonical_form(g).unwrap()).collect();
    assert_eq!(four.len(), 11);
    assert!(canonical_form_bounded(&path(5), 4).is_err());
}

#[test]
fn planarity_matches_kuratowski_oracle() {
    for n in 2..=7 {
        let mut nonplanar = 0;
        for g in all_graphs(n) {
            let p = is_planar(&g);
            assert_eq!(p, !has_kuratowski_subdivision(&g), "{g:?}");
            nonplanar += usize::from(!p);
        }
        assert_eq!(nonplanar > 0, n >= 5, "n={n}");
    }
}

#[test]
fn enumeration_counts_match_subset_oracle() {
    for n in 2..=6 {
        let count = |f: SearchFilter| enumerate_graphs(&f).unwrap().count();
        let base = SearchFilter::new(n, n);
        assert_eq!(count(base.clone()), brute_class_count(n, Graph::is_connected), "n={n}");

        let planar = SearchFilter { planar_only: true, ..base.clone() };
        assert_eq!(
            count(planar),
            brute_class_count(n, |g| g.is_connected() && !has_kuratowski_subdivision(g)),
            "planar n={n}"
        );

        let tf = SearchFilter { triangle_free_only: true, ..base.clone() };
        assert_eq!(count(tf), brute_class_count(n, |g| g.is_connected() && !g.has_triangle()), "n={n}");

        let dense = SearchFilter { min_degree: Some(2), ..base.clone() };
        assert_eq!(count(dense), brute_class_count(n, |g| g.is_connected() && g.min_degree() >= 2), "n={n}");

        let any = SearchFilter { require_connected: false, ..base };
        assert_eq!(count(any), brute_class_count(n, |_| true), "n={n}");
    }
}

#[test]
fn enumeration_spec_examples() {
    assert_eq!(enumerate_graphs(&SearchFilter::new(4, 4)).unwrap().count(), 6);
    assert_eq!(enumerate_graphs(&SearchFilter::new(5, 5)).unwrap().count(), 21);
    let cubic = SearchFilter { min_degree: Some(3), ..SearchFilter::new(4, 4) };
    let only: Vec<Graph> = enumerate_graphs(&cubic).unwrap().collect();
    assert_eq!(only.len(), 1);
    assert_eq!(only[0].edge_count(), 6);
}
