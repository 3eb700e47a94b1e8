//! Dense bitmask graphs and the structural primitives used by every
//! analysis in the crate.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid labels: {0}")]
    Labels(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A set of unordered vertex pairs, each stored as `(min, max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(BTreeSet<(usize, usize)>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    /// Inserts `uv`; returns false if it was already present.
    ///
    /// # Panics
    /// On `u == v`.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "edge endpoints must differ");
        self.0.insert((u.min(v), u.max(v)))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.contains(&(u.min(v), u.max(v)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Edges in ascending `(min, max)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    /// Union of all endpoints.
    pub fn vertices(&self) -> VertexSet {
        self.iter()
            .fold(VertexSet::EMPTY, |acc, (u, v)| acc.with(u).with(v))
    }
}

impl FromIterator<(usize, usize)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let mut s = EdgeSet::new();
        for (u, v) in iter {
            s.insert(u, v);
        }
        s
    }
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Labels are cosmetic display names; every algorithm works on ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Adds `uv` unless already present.
    pub(crate) fn ensure_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Attaches display names. Labels must be distinct and one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::Labels(format!(
                "expected {} labels, got {}",
                self.n,
                labels.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(GraphError::Labels(format!("label {l:?} is empty or has whitespace")));
            }
            if !seen.insert(l.as_str()) {
                return Err(GraphError::Labels(format!("duplicate label {l:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Open neighborhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Closed neighborhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    /// `N(A)`: the union of open neighborhoods.
    pub fn neighborhood_of(&self, a: VertexSet) -> VertexSet {
        a.iter().fold(VertexSet::EMPTY, |acc, v| acc | self.adj[v])
    }

    /// `N[A] = A ∪ N(A)`.
    pub fn closed_neighborhood_of(&self, a: VertexSet) -> VertexSet {
        a | self.neighborhood_of(a)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Minimum degree; zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (self.adj[u] - VertexSet::full(u + 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label when present, otherwise its id.
    pub fn name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Looks up a vertex by label, falling back to parsing a numeric id.
    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(i);
            }
        }
        name.parse::<usize>().ok().filter(|&v| v < self.n)
    }

    /// Renames vertex `v` to `perm[v]`. Labels travel with their vertices.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for v in 0..self.n {
            adj[perm[v]] = self.adj[v].map(perm);
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); self.n];
            for v in 0..self.n {
                out[perm[v]] = l[v].clone();
            }
            out
        });
        Graph { n: self.n, adj, labels }
    }

    /// Subgraph induced by `keep`, vertices renumbered in ascending order.
    /// The returned map sends each new id to its id in `self`.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let keep = keep & self.vertices();
        let map: Vec<usize> = keep.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| (self.adj[v] & keep).iter().map(|w| index[w]).collect())
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| map.iter().map(|&v| l[v].clone()).collect());
        (
            Graph {
                n: map.len(),
                adj,
                labels,
            },
            map,
        )
    }

    /// `G - N[A]`, with the map from new ids back to ids of `self`.
    pub fn delete_closed_neighborhood(&self, a: VertexSet) -> (Graph, Vec<usize>) {
        let removed = self.closed_neighborhood_of(a & self.vertices());
        self.induced_subgraph(self.vertices() - removed)
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut seen = VertexSet::singleton(source);
        let mut frontier = seen;
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let next = self.neighborhood_of(frontier) - seen;
            for v in next {
                dist[v] = Some(d);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// Connected components, each as a vertex set, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut left = self.vertices();
        while let Some(s) = left.first() {
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = self.neighborhood_of(frontier) - comp;
                comp |= next;
                frontier = next;
            }
            left = left - comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut parent = vec![usize::MAX; self.n];
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // no shorter cycle through this root can be found deeper
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for w in self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Maximum distance over all vertex pairs, or `None` when disconnected
    /// (or empty).
    pub fn diameter(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let mut diam = 0;
        for v in 0..self.n {
            for d in self.distances_from(v) {
                diam = diam.max(d?);
            }
        }
        Some(diam)
    }

    /// A proper 2-coloring `(X, Y)`, or `None` if an odd cycle exists.
    ///
    /// In each component the smallest vertex goes to `X`.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut x = VertexSet::EMPTY;
        let mut y = VertexSet::EMPTY;
        for comp in self.components() {
            let root = comp.first().unwrap();
            let mut layer = VertexSet::singleton(root);
            let mut seen = layer;
            let mut even = true;
            while !layer.is_empty() {
                if even {
                    x |= layer;
                } else {
                    y |= layer;
                }
                layer = self.neighborhood_of(layer) - seen;
                seen |= layer;
                even = !even;
            }
        }
        for (u, v) in self.edges() {
            if x.contains(u) == x.contains(v) {
                return None;
            }
        }
        Some((x, y))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().any(|(u, v)| self.adj[u].intersects(self.adj[v]))
    }

    /// Maximum matching size, by exhaustive branching (desk-scale inputs).
    pub fn matching_number(&self) -> usize {
        fn go(g: &Graph, live: VertexSet) -> usize {
            // first vertex that still has a live neighbor
            let Some(v) = live.iter().find(|&v| g.adj[v].intersects(live)) else {
                return 0;
            };
            let rest = live.without(v);
            let mut best = go(g, rest);
            for w in g.adj[v] & rest {
                best = best.max(1 + go(g, rest.without(w)));
            }
            best
        }
        go(self, self.vertices())
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.ensure_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.ensure_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }
}

/// Standard small graphs.
pub mod named {
    use super::Graph;

    /// Path on `n` vertices `0-1-..-(n-1)`.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    /// Star with center 0.
    pub fn star(leaves: usize) -> Graph {
        complete_bipartite(1, leaves)
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// The five-vertex WTD(2) example with vertices `x y z t w`.
    pub fn house() -> Graph {
        // x=0 y=1 z=2 t=3 w=4
        Graph::from_edges(5, [(0, 1), (0, 3), (1, 2), (1, 3), (3, 4), (2, 4)])
            .unwrap()
            .with_labels(["x", "y", "z", "t", "w"].map(String::from).to_vec())
            .unwrap()
    }
}
