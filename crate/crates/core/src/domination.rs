//! Total domination: minimal total dominating sets via minimal transversals
//! of the open-neighborhood hypergraph, the WTD(k) decision, dominating
//! edges, packings, minimal vertex covers, and realization of an arbitrary
//! Sperner family as the minimal-TDS family of a graph.

use std::str::FromStr;

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::graph::{EdgeSet, Graph, GraphError};
use crate::hypergraph::{self, HypergraphError, SizeVerdict, SpernerFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("total domination undefined: vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("total domination number is at least 2, got k = {0}")]
    KTooSmall(usize),
    #[error("edge set is empty")]
    NoEdges,
    #[error("hyperedge {0} is a singleton; a total dominating set has at least two vertices")]
    SingletonEdge(VertexSet),
    #[error("core edges leave vertex {vertex} without a neighbor in {edge}")]
    CoreAdjacency { vertex: usize, edge: VertexSet },
    #[error("core edge {0}-{1} leaves the family's support")]
    CoreEdgeOutsideSupport(usize, usize),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn require_isolate_free(g: &Graph) -> Result<(), DominationError> {
    match g.isolated_vertices().first() {
        Some(v) => Err(DominationError::IsolatedVertex(v)),
        None => Ok(()),
    }
}

/// Every vertex has a neighbor in `s`.
pub fn is_tds(g: &Graph, s: VertexSet) -> Result<bool, DominationError> {
    require_isolate_free(g)?;
    Ok(dominates(g, s))
}

#[inline]
fn dominates(g: &Graph, s: VertexSet) -> bool {
    (0..g.n()).all(|v| g.neighbors(v).intersects(s))
}

/// `s` is a TDS and no `s - {x}` is; enough because supersets of a TDS are
/// total dominating.
pub fn is_minimal_tds(g: &Graph, s: VertexSet) -> Result<bool, DominationError> {
    require_isolate_free(g)?;
    Ok(dominates(g, s) && s.iter().all(|x| !dominates(g, s.without(x))))
}

/// `H_G`: the open neighborhoods, minimized. Dropping supersets does not
/// change the minimal transversals.
pub fn neighborhood_hypergraph(g: &Graph) -> Result<SpernerFamily, DominationError> {
    require_isolate_free(g)?;
    Ok(SpernerFamily::minimize(g.n(), (0..g.n()).map(|v| g.neighbors(v)))?)
}

/// All minimal total dominating sets, ascending by bitmask.
pub fn mtds(g: &Graph) -> Result<SpernerFamily, DominationError> {
    Ok(neighborhood_hypergraph(g)?.transversals())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalDominationReport {
    /// Minimum size of a minimal TDS.
    pub gamma_t: usize,
    /// Maximum size of a minimal TDS.
    pub upper_gamma_t: usize,
    pub is_wtd: bool,
    /// Smallest-bitmask minimal TDS of size `gamma_t`.
    pub witness_min: VertexSet,
    /// Smallest-bitmask minimal TDS of size `upper_gamma_t`.
    pub witness_max: VertexSet,
    pub mtds_count: usize,
}

pub fn report(g: &Graph) -> Result<TotalDominationReport, DominationError> {
    Ok(report_from_family(&mtds(g)?))
}

pub(crate) fn report_from_family(family: &SpernerFamily) -> TotalDominationReport {
    let sets = family.edges();
    let gamma_t = sets.iter().map(|s| s.len()).min().expect("nonempty family");
    let upper = sets.iter().map(|s| s.len()).max().unwrap();
    // sets are sorted by bitmask, so the first hit is the least one
    let witness_min = *sets.iter().find(|s| s.len() == gamma_t).unwrap();
    let witness_max = *sets.iter().find(|s| s.len() == upper).unwrap();
    TotalDominationReport {
        gamma_t,
        upper_gamma_t: upper,
        is_wtd: gamma_t == upper,
        witness_min,
        witness_max,
        mtds_count: sets.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WtdDecision {
    pub accepted: bool,
    pub k: usize,
    pub verdict: SizeVerdict,
    /// A minimal TDS of size `k` when accepted; otherwise a minimal TDS whose
    /// size differs from `k`.
    pub certificate: VertexSet,
}

/// Decides whether `g` is WTD with total domination number `k`, using the
/// size-bounded transversal enumeration (polynomial for fixed `k`).
pub fn recognize_wtd_k(g: &Graph, k: usize) -> Result<WtdDecision, DominationError> {
    if k < 2 {
        return Err(DominationError::KTooSmall(k));
    }
    let h = neighborhood_hypergraph(g)?;
    let d = hypergraph::all_minimal_transversals_have_size_k(&h, k);
    Ok(WtdDecision {
        accepted: d.holds(),
        k,
        verdict: d.verdict,
        certificate: d.certificate,
    })
}

/// `uv` is a dominating edge when `{u, v}` is a TDS.
#[inline]
pub fn is_dominating_edge(g: &Graph, u: usize, v: usize) -> bool {
    g.has_edge(u, v) && (g.neighbors(u) | g.neighbors(v)) == g.vertices()
}

/// The dominating edges of a graph and their endpoints (`G_de`). This is an
/// edge-induced subgraph, not necessarily an induced one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingEdgeSubgraph {
    pub vertices: VertexSet,
    pub edges: EdgeSet,
}

impl DominatingEdgeSubgraph {
    /// Empty exactly when the total domination number is not 2.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The subgraph on the host's vertex ids; non-endpoints are isolated.
    pub fn to_graph(&self, n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("n within host bounds");
        for (u, v) in self.edges.iter() {
            g.ensure_edge(u, v);
        }
        g
    }
}

pub fn dominating_edge_subgraph(g: &Graph) -> Result<DominatingEdgeSubgraph, DominationError> {
    require_isolate_free(g)?;
    let edges: EdgeSet = g.edges().filter(|&(u, v)| is_dominating_edge(g, u, v)).collect();
    Ok(DominatingEdgeSubgraph {
        vertices: edges.vertices(),
        edges,
    })
}

/// Whether some edge dominates, i.e. the total domination number is 2.
pub fn has_dominating_edge(g: &Graph) -> bool {
    g.edges().any(|(u, v)| is_dominating_edge(g, u, v))
}

/// Maximum packing (vertex set with pairwise disjoint closed
/// neighborhoods). Uses the diameter shortcut when an edge dominates.
pub fn packing_number(g: &Graph) -> usize {
    if g.n() > 0 && g.isolated_vertices().is_empty() && has_dominating_edge(g) {
        packing_number_gamma_t_two(g)
    } else {
        packing_number_exact(g)
    }
}

/// For graphs with total domination number 2: the packing number is 2 iff
/// the diameter is 3, and 1 otherwise.
pub fn packing_number_gamma_t_two(g: &Graph) -> usize {
    if g.diameter() == Some(3) {
        2
    } else {
        1
    }
}

/// Exact packing number: a maximum independent set in the graph joining
/// vertices at distance at most 2. Exponential, fine for small inputs.
pub fn packing_number_exact(g: &Graph) -> usize {
    let n = g.n();
    let conflict: Vec<VertexSet> = (0..n)
        .map(|v| g.closed_neighborhood_of(g.closed_neighbors(v)).without(v))
        .collect();
    max_independent(&conflict, VertexSet::full(n))
}

fn max_independent(adj: &[VertexSet], cand: VertexSet) -> usize {
    if cand.is_empty() {
        return 0;
    }
    // a vertex of degree <= 1 in the candidate graph is always safe to take
    if let Some(v) = cand.iter().find(|&v| (adj[v] & cand).len() <= 1) {
        return 1 + max_independent(adj, cand - adj[v].with(v));
    }
    let v = cand.iter().max_by_key(|&v| (adj[v] & cand).len()).unwrap();
    let with = 1 + max_independent(adj, cand - adj[v].with(v));
    let without = max_independent(adj, cand.without(v));
    with.max(without)
}

/// All inclusion-minimal vertex covers of the edges, as minimal transversals
/// of the family of 2-sets.
pub fn minimal_vertex_covers(n: usize, edges: &EdgeSet) -> Result<SpernerFamily, DominationError> {
    if edges.is_empty() {
        return Err(DominationError::NoEdges);
    }
    let h = SpernerFamily::minimize(n, edges.iter().map(|(u, v)| VertexSet::singleton(u).with(v)))?;
    Ok(h.transversals())
}

pub fn minimal_vertex_covers_of(g: &Graph) -> Result<SpernerFamily, DominationError> {
    minimal_vertex_covers(g.n(), &g.edge_set())
}

/// How the vertices of the family's support are joined to each other.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CorePolicy {
    /// A clique on the support.
    #[default]
    Complete,
    /// Greedily add support edges until every support vertex has a neighbor
    /// in each hyperedge.
    MinimalValid,
    /// Caller-supplied support edges, in ground-set ids.
    Explicit(EdgeSet),
}

impl FromStr for CorePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "complete" => Ok(CorePolicy::Complete),
            "minimal-valid" | "minimal" => Ok(CorePolicy::MinimalValid),
            other => Err(format!("unknown core policy {other:?}")),
        }
    }
}

/// Output of [`realize_mtds`].
#[derive(Debug, Clone)]
pub struct Realization {
    pub graph: Graph,
    /// Ground element behind each support vertex; support vertices come
    /// first, in ascending ground order.
    pub support: Vec<usize>,
    /// Each minimal transversal of the family with the vertex whose open
    /// neighborhood it is.
    pub transversal_vertices: Vec<(VertexSet, usize)>,
    /// First id of the extension's vertices, if any were attached.
    pub extension_offset: Option<usize>,
}

impl Realization {
    /// The input family rewritten in the realized graph's ids.
    pub fn family_in_graph(&self, family: &SpernerFamily) -> SpernerFamily {
        let mut index = vec![usize::MAX; MAX_VERTICES];
        for (i, &x) in self.support.iter().enumerate() {
            index[x] = i;
        }
        SpernerFamily::new(
            self.graph.n(),
            family.edges().iter().map(|e| e.map(&index)),
        )
        .expect("relabeling preserves the antichain")
    }
}

/// Builds a graph whose minimal total dominating sets are exactly the
/// members of `family`.
///
/// The support of the family becomes a core whose edges give every core
/// vertex a neighbor in each member; then for every minimal transversal `T`
/// a fresh vertex with open neighborhood `T` is added. An optional
/// extension graph is attached with each of its vertices joined to every
/// member, which leaves the minimal-TDS family unchanged.
///
/// `labels`, when given, names the ground elements; fresh vertices are named
/// after the transversal they see.
pub fn realize_mtds(
    family: &SpernerFamily,
    extension: Option<&Graph>,
    policy: &CorePolicy,
    labels: Option<&[String]>,
) -> Result<Realization, DominationError> {
    if let Some(&e) = family.edges().iter().find(|e| e.len() < 2) {
        return Err(DominationError::SingletonEdge(e));
    }
    let support_set = family.support();
    let support: Vec<usize> = support_set.to_vec();
    let mut index = vec![usize::MAX; MAX_VERTICES];
    for (i, &x) in support.iter().enumerate() {
        index[x] = i;
    }
    let members: Vec<VertexSet> = family.edges().iter().map(|e| e.map(&index)).collect();
    let k = support.len();

    let core_edges: EdgeSet = match policy {
        CorePolicy::Complete => (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect(),
        CorePolicy::MinimalValid => greedy_core(k, &members),
        CorePolicy::Explicit(edges) => {
            let mut out = EdgeSet::new();
            for (u, v) in edges.iter() {
                if !support_set.contains(u) || !support_set.contains(v) {
                    return Err(DominationError::CoreEdgeOutsideSupport(u, v));
                }
                out.insert(index[u], index[v]);
            }
            let mut adj = vec![VertexSet::EMPTY; k];
            for (u, v) in out.iter() {
                adj[u].insert(v);
                adj[v].insert(u);
            }
            for (a, nb) in adj.iter().enumerate() {
                if let Some(e) = members.iter().find(|e| !nb.intersects(**e)) {
                    return Err(DominationError::CoreAdjacency {
                        vertex: support[a],
                        edge: e.map(&support),
                    });
                }
            }
            out
        }
    };

    let local = SpernerFamily::new(k, members.iter().copied())?;
    let transversals = local.transversals();
    let ext_n = extension.map_or(0, |x| x.n());
    let n = k + transversals.len() + ext_n;
    let mut g = Graph::empty(n)?;
    for (u, v) in core_edges.iter() {
        g.ensure_edge(u, v);
    }
    let mut transversal_vertices = Vec::with_capacity(transversals.len());
    for (i, &t) in transversals.edges().iter().enumerate() {
        let vt = k + i;
        for u in t {
            g.ensure_edge(vt, u);
        }
        transversal_vertices.push((t.map(&support), vt));
    }
    let mut extension_offset = None;
    if let Some(ext) = extension {
        let off = k + transversals.len();
        extension_offset = Some(off);
        for (u, v) in ext.edges() {
            g.ensure_edge(off + u, off + v);
        }
        let hitting = greedy_hitting_set(&members);
        for w in 0..ext.n() {
            for u in hitting {
                g.ensure_edge(off + w, u);
            }
        }
    }

    let name = |x: usize| match labels {
        Some(l) => l[x].clone(),
        None => x.to_string(),
    };
    let mut names: Vec<String> = support.iter().map(|&x| name(x)).collect();
    for &(t, _) in &transversal_vertices {
        let inner: Vec<String> = t.iter().map(name).collect();
        names.push(format!("v{{{}}}", inner.join(",")));
    }
    if let Some(ext) = extension {
        names.extend((0..ext.n()).map(|w| format!("ext{}", ext.name(w))));
    }
    let graph = match g.clone().with_labels(names) {
        Ok(labeled) => labeled,
        Err(_) => g,
    };
    Ok(Realization {
        graph,
        support,
        transversal_vertices,
        extension_offset,
    })
}

/// For each core vertex in turn, joins it to the vertex covering the most
/// still-unmet members until every member is met.
fn greedy_core(k: usize, members: &[VertexSet]) -> EdgeSet {
    let mut adj = vec![VertexSet::EMPTY; k];
    let mut edges = EdgeSet::new();
    for a in 0..k {
        loop {
            let unmet: Vec<VertexSet> = members.iter().copied().filter(|e| !adj[a].intersects(*e)).collect();
            if unmet.is_empty() {
                break;
            }
            let candidates = unmet.iter().fold(VertexSet::EMPTY, |acc, &e| acc | e).without(a);
            let b = candidates
                .iter()
                .max_by_key(|&b| (unmet.iter().filter(|e| e.contains(b)).count(), std::cmp::Reverse(b)))
                .expect("members have at least two vertices");
            adj[a].insert(b);
            adj[b].insert(a);
            edges.insert(a, b);
        }
    }
    edges
}

fn greedy_hitting_set(members: &[VertexSet]) -> VertexSet {
    let mut chosen = VertexSet::EMPTY;
    loop {
        let unmet: Vec<VertexSet> = members.iter().copied().filter(|e| !chosen.intersects(*e)).collect();
        if unmet.is_empty() {
            return chosen;
        }
        let pool = unmet.iter().fold(VertexSet::EMPTY, |acc, &e| acc | e);
        let b = pool
            .iter()
            .max_by_key(|&b| (unmet.iter().filter(|e| e.contains(b)).count(), std::cmp::Reverse(b)))
            .unwrap();
        chosen.insert(b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn s(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn tds_checks() {
        let g = house();
        assert!(is_tds(&g, s(&[1, 3])).unwrap());
        let p5 = path(5);
        // v2, v4 in 1-based naming are ids 1 and 3
        assert!(!is_tds(&p5, s(&[1, 3])).unwrap());
        assert!(is_tds(&p5, p5.vertices()).unwrap());
        assert!(is_minimal_tds(&p5, s(&[1, 2, 3])).unwrap());
        assert!(!is_minimal_tds(&p5, s(&[0, 1, 2, 3])).unwrap());
        assert!(is_minimal_tds(&path(2), s(&[0, 1])).unwrap());
        let iso = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(is_tds(&iso, s(&[0, 1])), Err(DominationError::IsolatedVertex(2)));
    }

    #[test]
    fn neighborhood_hypergraphs() {
        assert_eq!(neighborhood_hypergraph(&path(2)).unwrap().edges(), &[s(&[0]), s(&[1])]);
        assert_eq!(
            neighborhood_hypergraph(&star(3)).unwrap().edges(),
            &[s(&[0]), s(&[1, 2, 3])]
        );
        // y,t / z,t / y,w with x=0 y=1 z=2 t=3 w=4
        assert_eq!(
            neighborhood_hypergraph(&house()).unwrap().edges(),
            &[s(&[1, 3]), s(&[2, 3]), s(&[1, 4])]
        );
    }

    #[test]
    fn mtds_examples() {
        assert_eq!(mtds(&path(5)).unwrap().edges(), &[s(&[1, 2, 3]), s(&[0, 1, 3, 4])]);
        assert_eq!(mtds(&path(2)).unwrap().edges(), &[s(&[0, 1])]);
        assert_eq!(
            mtds(&house()).unwrap().edges(),
            &[s(&[1, 2]), s(&[1, 3]), s(&[3, 4])]
        );
    }

    #[test]
    fn reports() {
        let r = report(&cycle(6)).unwrap();
        assert_eq!((r.gamma_t, r.upper_gamma_t, r.is_wtd), (4, 4, true));
        let r = report(&path(5)).unwrap();
        assert_eq!((r.gamma_t, r.upper_gamma_t, r.is_wtd), (3, 4, false));
        assert_eq!(r.witness_min, s(&[1, 2, 3]));
        assert_eq!(r.witness_max, s(&[0, 1, 3, 4]));
        let r = report(&house()).unwrap();
        assert_eq!((r.gamma_t, r.upper_gamma_t, r.is_wtd), (2, 2, true));
    }

    #[test]
    fn recognition() {
        assert!(recognize_wtd_k(&house(), 2).unwrap().accepted);
        let c6 = recognize_wtd_k(&cycle(6), 2).unwrap();
        assert!(!c6.accepted);
        assert_eq!(c6.certificate.len(), 4);
        assert!(recognize_wtd_k(&complete(4), 2).unwrap().accepted);
        assert!(recognize_wtd_k(&cycle(6), 4).unwrap().accepted);
        assert_eq!(recognize_wtd_k(&cycle(6), 1), Err(DominationError::KTooSmall(1)));
        let p5 = recognize_wtd_k(&path(5), 3).unwrap();
        assert_eq!(p5.verdict, SizeVerdict::Larger);
        assert_eq!(p5.certificate, s(&[0, 1, 3, 4]));
    }

    #[test]
    fn dominating_edges() {
        let de = dominating_edge_subgraph(&house()).unwrap();
        assert_eq!(de.edges, [(1, 2), (1, 3), (3, 4)].into_iter().collect());
        assert_eq!(de.vertices, s(&[1, 2, 3, 4]));
        assert_eq!(dominating_edge_subgraph(&complete(4)).unwrap().edges.len(), 6);
        assert_eq!(dominating_edge_subgraph(&star(3)).unwrap().edges.len(), 3);
        assert!(dominating_edge_subgraph(&cycle(6)).unwrap().is_empty());
    }

    #[test]
    fn packing_numbers() {
        assert_eq!(packing_number(&path(4)), 2);
        assert_eq!(packing_number(&house()), 1);
        assert_eq!(packing_number(&complete_bipartite(3, 3)), 1);
        assert_eq!(packing_number_exact(&path(4)), 2);
        assert_eq!(packing_number_exact(&cycle(6)), 2);
        assert_eq!(packing_number_exact(&path(7)), 3);
    }

    #[test]
    fn vertex_covers() {
        assert_eq!(minimal_vertex_covers_of(&path(2)).unwrap().edges(), &[s(&[0]), s(&[1])]);
        assert_eq!(minimal_vertex_covers_of(&path(3)).unwrap().edges(), &[s(&[1]), s(&[0, 2])]);
        // 2K2 with x=0 y=1 z=2 t=3
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            minimal_vertex_covers_of(&two_k2).unwrap().edges(),
            &[s(&[0, 2]), s(&[1, 2]), s(&[0, 3]), s(&[1, 3])]
        );
        assert_eq!(minimal_vertex_covers(3, &EdgeSet::new()), Err(DominationError::NoEdges));
    }

    #[test]
    fn realize_single_pair_is_p4() {
        let f = SpernerFamily::new(2, [s(&[0, 1])]).unwrap();
        let r = realize_mtds(&f, None, &CorePolicy::MinimalValid, None).unwrap();
        assert_eq!(r.graph.n(), 4);
        assert_eq!(r.graph.edge_count(), 3);
        assert_eq!(
            crate::canon::canonical_form(&r.graph).unwrap(),
            crate::canon::canonical_form(&path(4)).unwrap()
        );
        assert_eq!(mtds(&r.graph).unwrap(), r.family_in_graph(&f));
    }

    #[test]
    fn realize_two_pairs_complete_core() {
        let f = SpernerFamily::new(4, [s(&[0, 1]), s(&[2, 3])]).unwrap();
        let r = realize_mtds(&f, None, &CorePolicy::Complete, None).unwrap();
        assert_eq!(r.graph.n(), 8);
        assert_eq!(mtds(&r.graph).unwrap(), r.family_in_graph(&f));
    }

    #[test]
    fn realize_with_extension() {
        let f = SpernerFamily::new(4, [s(&[0, 1]), s(&[2, 3])]).unwrap();
        let ext = cycle(5);
        let r = realize_mtds(&f, Some(&ext), &CorePolicy::MinimalValid, None).unwrap();
        assert_eq!(r.graph.n(), 4 + 4 + 5);
        assert_eq!(mtds(&r.graph).unwrap(), r.family_in_graph(&f));
    }

    #[test]
    fn realize_rejects_bad_input() {
        let f = SpernerFamily::new(3, [s(&[0]), s(&[1, 2])]).unwrap();
        assert!(matches!(
            realize_mtds(&f, None, &CorePolicy::Complete, None),
            Err(DominationError::SingletonEdge(_))
        ));
        let f = SpernerFamily::new(4, [s(&[0, 1]), s(&[2, 3])]).unwrap();
        // 0-1 and 2-3 alone give 0 no neighbor in {2,3}
        let bad: EdgeSet = [(0, 1), (2, 3)].into_iter().collect();
        assert!(matches!(
            realize_mtds(&f, None, &CorePolicy::Explicit(bad), None),
            Err(DominationError::CoreAdjacency { vertex: 0, .. })
        ));
        let good: EdgeSet = [(0, 1), (2, 3), (0, 2), (1, 3)].into_iter().collect();
        let r = realize_mtds(&f, None, &CorePolicy::Explicit(good), None).unwrap();
        assert_eq!(mtds(&r.graph).unwrap(), r.family_in_graph(&f));
    }
}
