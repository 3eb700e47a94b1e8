//! Brute-force oracles shared by the integration tests. None of them go
//! through the hypergraph or canonical-labeling code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use wtd::search::{enumerate_graphs, Levels, SearchFilter};
use wtd::{Graph, VertexSet};

pub fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

pub fn is_tds(g: &Graph, s: VertexSet) -> bool {
    (0..g.n()).all(|v| g.neighbors(v).intersects(s))
}

/// Every minimal TDS by checking all `2^n` subsets.
pub fn brute_mtds(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    for bits in 0..(1u64 << n) {
        let s = VertexSet::from_bits(bits);
        if is_tds(g, s) && s.iter().all(|x| !is_tds(g, s.without(x))) {
            out.push(s);
        }
    }
    out
}

/// Minimal TDSs by include/exclude branching over vertices in id order.
/// A branch dies when some vertex has lost every potential dominator, or
/// when an included vertex can no longer have a private neighbor.
pub fn pruned_mtds(g: &Graph) -> Vec<VertexSet> {
    fn go(g: &Graph, v: usize, inc: VertexSet, exc: VertexSet, out: &mut Vec<VertexSet>) {
        let n = g.n();
        let open = !(inc | exc) & VertexSet::full(n);
        if (0..n).any(|w| !g.neighbors(w).intersects(inc | open)) {
            return;
        }
        // x needs some neighbor w with N(w) meeting the final set only in x
        for x in inc {
            if g.neighbors(x).iter().all(|w| !(g.neighbors(w) & inc).without(x).is_empty()) {
                return;
            }
        }
        if v == n {
            if is_tds(g, inc) && inc.iter().all(|x| !is_tds(g, inc.without(x))) {
                out.push(inc);
            }
            return;
        }
        go(g, v + 1, inc.with(v), exc, out);
        go(g, v + 1, inc, exc.with(v), out);
    }
    let mut out = Vec::new();
    go(g, 0, VertexSet::EMPTY, VertexSet::EMPTY, &mut out);
    out.sort();
    out
}

/// Minimal transversals of `sets` over `0..ground` by scanning all subsets.
pub fn brute_transversals(ground: usize, sets: &[VertexSet]) -> Vec<VertexSet> {
    let hits = |t: VertexSet| sets.iter().all(|s| s.intersects(t));
    (0..(1u64 << ground))
        .map(VertexSet::from_bits)
        .filter(|&t| hits(t) && t.iter().all(|x| !hits(t.without(x))))
        .collect()
}

pub fn brute_packing_number(g: &Graph) -> usize {
    let n = g.n();
    (0..(1u64 << n))
        .map(VertexSet::from_bits)
        .filter(|s| {
            let v = s.to_vec();
            v.iter().enumerate().all(|(i, &a)| {
                v[i + 1..]
                    .iter()
                    .all(|&b| !g.closed_neighbors(a).intersects(g.closed_neighbors(b)))
            })
        })
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// `(gamma_t, Gamma_t)` from the brute-force family.
pub fn brute_gammas(g: &Graph) -> (usize, usize) {
    let f = brute_mtds(g);
    let lo = f.iter().map(|s| s.len()).min().unwrap();
    let hi = f.iter().map(|s| s.len()).max().unwrap();
    (lo, hi)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Isomorphism by backtracking over vertex maps, checking adjacency to the
/// already-mapped prefix at each step.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == a.n() {
            return true;
        }
        for w in 0..b.n() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(map[u], w)) {
                continue;
            }
            used[w] = true;
            map.push(w);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() || sorted_degrees(a) != sorted_degrees(b) {
        return false;
    }
    extend(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

/// Lexicographically largest adjacency bit string over all relabelings.
pub fn brute_certificate(g: &Graph) -> Vec<bool> {
    let n = g.n();
    permutations(n)
        .into_iter()
        .map(|p| {
            let mut inv = vec![0; n];
            for (v, &q) in p.iter().enumerate() {
                inv[q] = v;
            }
            let mut bits = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in i + 1..n {
                    bits.push(g.has_edge(inv[i], inv[j]));
                }
            }
            bits
        })
        .max()
        .unwrap()
}

/// All labeled graphs on `n` vertices.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..(1u64 << pairs.len())).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

/// Isomorphism classes of labeled graphs satisfying `keep`, counted with
/// the brute-force certificate.
pub fn brute_class_count(n: usize, keep: impl Fn(&Graph) -> bool) -> usize {
    all_labeled_graphs(n)
        .filter(|g| keep(g))
        .map(|g| brute_certificate(&g))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Connected graphs on 2..=n_max vertices, one per isomorphism class.
pub fn connected_graphs(n_max: usize) -> Vec<Graph> {
    enumerate_graphs(&SearchFilter::new(2, n_max)).unwrap().collect()
}

/// All graphs (connected or not) on exactly `n` vertices, one per class.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut f = SearchFilter::new(n.max(2), n.max(2));
    f.require_connected = false;
    Levels::new(f).unwrap().flat_map(|(_, l)| l).collect()
}

/// Whether `g` contains a subdivision of `K5` or `K3,3`, by trying every
/// choice of branch vertices and every assignment of the remaining vertices
/// to the model's edges. Practical for `n <= 7`.
pub fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let n = g.n();
    let verts: Vec<usize> = (0..n).collect();
    for branch in combinations(&verts, 5) {
        let edges: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (branch[i], branch[j]))
            .collect();
        if realizes(g, &branch, &edges) {
            return true;
        }
    }
    for branch in combinations(&verts, 6) {
        // split into sides with branch[0] on the left
        for left_rest in combinations(&branch[1..], 2) {
            let left: Vec<usize> = std::iter::once(branch[0]).chain(left_rest.iter().copied()).collect();
            let right: Vec<usize> = branch.iter().copied().filter(|v| !left.contains(v)).collect();
            let edges: Vec<(usize, usize)> = left
                .iter()
                .flat_map(|&a| right.iter().map(move |&b| (a, b)))
                .collect();
            if realizes(g, &branch, &edges) {
                return true;
            }
        }
    }
    false
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Each model edge becomes a path through the non-branch vertices assigned
/// to it; unassigned vertices are unused.
fn realizes(g: &Graph, branch: &[usize], edges: &[(usize, usize)]) -> bool {
    let others: Vec<usize> = (0..g.n()).filter(|v| !branch.contains(v)).collect();
    let slots = edges.len() + 1;
    let total = slots.pow(others.len() as u32);
    for code in 0..total {
        let mut assign: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        let mut c = code;
        for &o in &others {
            let slot = c % slots;
            c /= slots;
            if slot < edges.len() {
                assign[slot].push(o);
            }
        }
        let ok = edges.iter().zip(&assign).all(|(&(a, b), inner)| path_through(g, a, b, inner));
        if ok {
            return true;
        }
    }
    false
}

fn path_through(g: &Graph, a: usize, b: usize, inner: &[usize]) -> bool {
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    perms(inner).into_iter().any(|order| {
        let mut walk = vec![a];
        walk.extend(order);
        walk.push(b);
        walk.windows(2).all(|w| g.has_edge(w[0], w[1]))
    })
}

/// A random valid W2 recipe: bipartite `h` on at most `max_h` vertices with
/// every cover vertex, random step-3 extras patched until every `h`-edge is
/// seen by every other `h`-vertex, and an optional `h'` whose vertices each
/// see a random vertex cover of `h`.
pub fn random_recipe(rng: &mut impl rand::Rng, max_h: usize) -> wtd::wtd2::W2Recipe {
    use wtd::wtd2::W2Recipe;
    use wtd::EdgeSet;
    let h = loop {
        let n = rng.gen_range(2..=max_h);
        let left = rng.gen_range(1..n);
        let mut g = Graph::empty(n).unwrap();
        for u in 0..left {
            for v in left..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if g.isolated_vertices().is_empty() {
            break g;
        }
    };
    let k = h.n();
    let mut recipe = W2Recipe::minimal(h.clone()).unwrap();
    recipe.mvc_vertices.reverse();

    let mut extra = EdgeSet::new();
    for u in 0..k {
        for v in u + 1..k {
            if !h.has_edge(u, v) && rng.gen_bool(0.2) {
                extra.insert(u, v);
            }
        }
    }
    for (u, v) in h.edges() {
        for w in 0..k {
            if w == u || w == v {
                continue;
            }
            let sees = |x: usize| h.has_edge(w, x) || extra.contains(w.min(x), w.max(x));
            if !sees(u) && !sees(v) {
                let x = if rng.gen_bool(0.5) { u } else { v };
                extra.insert(w.min(x), w.max(x));
            }
        }
    }
    recipe.step3_edges = extra;

    if rng.gen_bool(0.6) {
        let p = rng.gen_range(1..=3);
        let mut hp = Graph::empty(p).unwrap();
        for a in 0..p {
            for b in a + 1..p {
                if rng.gen_bool(0.5) {
                    hp.add_edge(a, b).unwrap();
                }
            }
        }
        for w in 0..p {
            let mut cover: VertexSet = (0..k).filter(|_| rng.gen_bool(0.3)).collect();
            for (u, v) in h.edges() {
                if !cover.contains(u) && !cover.contains(v) {
                    cover.insert(if rng.gen_bool(0.5) { u } else { v });
                }
            }
            recipe.step4_edges.extend(cover.iter().map(|u| (w, u)));
        }
        recipe.h_prime = Some(hp);
    }
    recipe
}
