//! WTD(2) graphs with packing number 2: the four-step `W2` construction,
//! membership with a reconstruction certificate, and the linear-time
//! recognizer for triangle-free WTD(2) graphs.
//!
//! The construction:
//!
//! 1. a bipartite graph `h` without isolated vertices;
//! 2. for each minimal vertex cover `S` of `h`, a fresh vertex `v_S` joined
//!    to exactly `S`;
//! 3. extra edges inside `V(h)` so that every `w` in `V(h)` outside an edge
//!    `uv` of `h` sees `u` or `v`;
//! 4. an optional graph `h'` whose every vertex sees an endpoint of every
//!    edge of `h`.

mod recipe;
mod triangle_free;

pub use recipe::{parse_recipe, write_recipe, RecipeParseError, TWO_K2_RECIPE};
pub use triangle_free::{recognize_triangle_free_wtd2, recognize_triangle_free_wtd2_counted};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::domination::{self, DominationError};
use crate::graph::{EdgeSet, Graph};
use crate::hypergraph::SpernerFamily;

/// Largest number of minimal vertex covers of `h` a recipe may have.
pub const MVC_BUDGET: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvcVertex {
    /// The minimal vertex cover, in `h` ids.
    pub cover: VertexSet,
    pub label: Option<String>,
}

/// Data for the four-step construction.
///
/// Vertices of the assembled graph are laid out as `h`'s vertices, then the
/// cover vertices in listed order, then `h'`'s vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W2Recipe {
    pub h: Graph,
    pub mvc_vertices: Vec<MvcVertex>,
    /// Extra edges among `h`'s vertices.
    pub step3_edges: EdgeSet,
    pub h_prime: Option<Graph>,
    /// `(w, u)`: vertex `w` of `h'` joined to vertex `u` of `h`.
    pub step4_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum W2Error {
    #[error("step 1: h has no edges")]
    EmptyH,
    #[error("step 1: h is not bipartite")]
    NotBipartite,
    #[error("step 1: vertex {0} of h is isolated")]
    IsolatedInH(String),
    #[error("step 2: h has {count} minimal vertex covers, over the budget of {budget}")]
    MvcBudget { count: usize, budget: usize },
    #[error("step 2: no vertex assigned to minimal vertex cover {0}")]
    MissingCover(String),
    #[error("step 2: {0} is not a minimal vertex cover of h")]
    NotMinimalCover(String),
    #[error("step 2: minimal vertex cover {0} is assigned twice")]
    DuplicateCover(String),
    #[error("step 3: edge {0}-{1} is not between vertices of h")]
    Step3OutOfRange(usize, usize),
    #[error("step 3: {w} is adjacent to neither {u} nor {v}")]
    Step3Uncovered { w: String, u: String, v: String },
    #[error("step 4: edge ({0}, {1}) has an endpoint out of range")]
    Step4OutOfRange(usize, usize),
    #[error("the assembled graph would have {0} vertices")]
    TooManyVertices(usize),
    #[error("step 4: {w} is adjacent to neither {u} nor {v}")]
    Step4Uncovered { w: String, u: String, v: String },
}

impl W2Error {
    /// Which construction step the violation belongs to.
    pub fn step(&self) -> u8 {
        match self {
            W2Error::EmptyH | W2Error::NotBipartite | W2Error::IsolatedInH(_) => 1,
            W2Error::MvcBudget { .. }
            | W2Error::MissingCover(_)
            | W2Error::NotMinimalCover(_)
            | W2Error::DuplicateCover(_) => 2,
            W2Error::Step3OutOfRange(..) | W2Error::Step3Uncovered { .. } => 3,
            W2Error::Step4OutOfRange(..) | W2Error::Step4Uncovered { .. } => 4,
            W2Error::TooManyVertices(_) => 0,
        }
    }
}

impl W2Recipe {
    /// `h` plus one cover vertex per minimal vertex cover, nothing else.
    pub fn minimal(h: Graph) -> Result<Self, W2Error> {
        let covers = covers_of(&h)?;
        Ok(W2Recipe {
            h,
            mvc_vertices: covers
                .edges()
                .iter()
                .map(|&cover| MvcVertex { cover, label: None })
                .collect(),
            step3_edges: EdgeSet::new(),
            h_prime: None,
            step4_edges: Vec::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.h.n() + self.mvc_vertices.len() + self.h_prime.as_ref().map_or(0, |p| p.n())
    }

    /// Display names in the assembled layout. Unique unless labels collide.
    pub fn names(&self) -> Vec<String> {
        let h_name = |v: usize| self.h.name(v);
        let mut names: Vec<String> = (0..self.h.n()).map(h_name).collect();
        for m in &self.mvc_vertices {
            names.push(match &m.label {
                Some(l) => l.clone(),
                None => cover_name(&self.h, m.cover),
            });
        }
        if let Some(p) = &self.h_prime {
            names.extend((0..p.n()).map(|w| match p.labels() {
                Some(l) => l[w].clone(),
                None => format!("u{}", w + 1),
            }));
        }
        names
    }
}

fn cover_name(h: &Graph, cover: VertexSet) -> String {
    let inner: Vec<String> = cover.iter().map(|v| h.name(v)).collect();
    format!("v{{{}}}", inner.join(","))
}

fn covers_of(h: &Graph) -> Result<SpernerFamily, W2Error> {
    if h.edge_count() == 0 {
        return Err(W2Error::EmptyH);
    }
    if let Some(v) = h.isolated_vertices().first() {
        return Err(W2Error::IsolatedInH(h.name(v)));
    }
    if !h.is_bipartite() {
        return Err(W2Error::NotBipartite);
    }
    Ok(domination::minimal_vertex_covers_of(h).expect("h has edges"))
}

/// Assembles the graph described by a recipe after validating every step.
/// Labels are attached when `h` is labeled and the resulting names are
/// distinct.
pub fn construct_w2(recipe: &W2Recipe) -> Result<Graph, W2Error> {
    let h = &recipe.h;
    let k = h.n();
    let covers = covers_of(h)?;
    if covers.len() > MVC_BUDGET {
        return Err(W2Error::MvcBudget {
            count: covers.len(),
            budget: MVC_BUDGET,
        });
    }
    let mut seen = Vec::new();
    for m in &recipe.mvc_vertices {
        if !covers.contains(m.cover) {
            return Err(W2Error::NotMinimalCover(format!("{}", NamedSet(h, m.cover))));
        }
        if seen.contains(&m.cover) {
            return Err(W2Error::DuplicateCover(format!("{}", NamedSet(h, m.cover))));
        }
        seen.push(m.cover);
    }
    if let Some(&missing) = covers.edges().iter().find(|c| !seen.contains(c)) {
        return Err(W2Error::MissingCover(format!("{}", NamedSet(h, missing))));
    }

    let names = recipe.names();
    let mut g = Graph::empty(recipe.vertex_count()).map_err(|_| W2Error::TooManyVertices(recipe.vertex_count()))?;
    for (u, v) in h.edges() {
        g.ensure_edge(u, v);
    }
    for (i, m) in recipe.mvc_vertices.iter().enumerate() {
        for u in m.cover {
            g.ensure_edge(k + i, u);
        }
    }
    for (u, v) in recipe.step3_edges.iter() {
        if v >= k {
            return Err(W2Error::Step3OutOfRange(u, v));
        }
        g.ensure_edge(u, v);
    }
    let off = k + recipe.mvc_vertices.len();
    if let Some(p) = &recipe.h_prime {
        for (a, b) in p.edges() {
            g.ensure_edge(off + a, off + b);
        }
    }
    let hp_n = recipe.h_prime.as_ref().map_or(0, |p| p.n());
    for &(w, u) in &recipe.step4_edges {
        if w >= hp_n || u >= k {
            return Err(W2Error::Step4OutOfRange(w, u));
        }
        g.ensure_edge(off + w, u);
    }

    for (u, v) in h.edges() {
        let seen_by = g.neighbors(u) | g.neighbors(v);
        for w in 0..k {
            if w != u && w != v && !seen_by.contains(w) {
                return Err(W2Error::Step3Uncovered {
                    w: names[w].clone(),
                    u: names[u].clone(),
                    v: names[v].clone(),
                });
            }
        }
        for w in off..off + hp_n {
            if !seen_by.contains(w) {
                return Err(W2Error::Step4Uncovered {
                    w: names[w].clone(),
                    u: names[u].clone(),
                    v: names[v].clone(),
                });
            }
        }
    }

    if h.labels().is_some() {
        if let Ok(labeled) = g.clone().with_labels(names) {
            return Ok(labeled);
        }
    }
    Ok(g)
}

struct NamedSet<'a>(&'a Graph, VertexSet);

impl std::fmt::Display for NamedSet<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let inner: Vec<String> = self.1.iter().map(|v| self.0.name(v)).collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

/// A decomposition of a `W2` graph into recipe form.
#[derive(Debug, Clone)]
pub struct W2Certificate {
    pub recipe: W2Recipe,
    /// Input vertex behind each vertex of the assembled layout.
    pub vertex_map: Vec<usize>,
    /// The packing pair whose open neighborhoods are the parts of `h`.
    pub packing: (usize, usize),
}

/// Decides `W2` membership (WTD(2) with packing number 2). On success the
/// certificate's recipe rebuilds `g` exactly: `construct_w2` followed by
/// `vertex_map` reproduces the input's edges.
pub fn w2_membership(g: &Graph) -> Result<Option<W2Certificate>, DominationError> {
    if !domination::recognize_wtd_k(g, 2)?.accepted {
        return Ok(None);
    }
    let Some((x, y)) = extremal_packing_pair(g) else {
        return Ok(None);
    };
    let de = domination::dominating_edge_subgraph(g)?;
    let hv: Vec<usize> = de.vertices.to_vec();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in hv.iter().enumerate() {
        index[v] = i;
    }
    let labeled = g.labels().is_some();
    let label = |v: usize| labeled.then(|| g.name(v));

    let mut h = Graph::from_edges(hv.len(), de.edges.iter().map(|(u, v)| (index[u], index[v])))
        .expect("dominating edges form a simple graph");
    if labeled {
        h = h.with_labels(hv.iter().map(|&v| g.name(v)).collect()).expect("input labels are valid");
    }

    let (nx, ny) = (g.neighbors(x), g.neighbors(y));
    let covers = domination::minimal_vertex_covers_of(&h)?;
    let mut vertex_map = hv.clone();
    let mut mvc_vertices = Vec::new();
    let mut used = de.vertices;
    for &cover in covers.edges() {
        let s = cover.map(&hv);
        let vs = if s == nx {
            x
        } else if s == ny {
            y
        } else {
            (0..g.n())
                .find(|&v| !de.vertices.contains(v) && v != x && v != y && g.neighbors(v) == s)
                .expect("every minimal vertex cover of G_de is an open neighborhood")
        };
        used.insert(vs);
        vertex_map.push(vs);
        mvc_vertices.push(MvcVertex {
            cover,
            label: label(vs),
        });
    }

    let rest: VertexSet = g.vertices() - used;
    let (mut hp, rest_map) = g.induced_subgraph(rest);
    if !labeled {
        hp = hp.without_labels();
    }
    let mut rest_index = vec![usize::MAX; g.n()];
    for (i, &v) in rest_map.iter().enumerate() {
        rest_index[v] = i;
    }
    let mut step4_edges = Vec::new();
    for (i, &w) in rest_map.iter().enumerate() {
        for u in g.neighbors(w) & de.vertices {
            step4_edges.push((i, index[u]));
        }
    }
    vertex_map.extend(rest_map.iter().copied());

    let step3_edges: EdgeSet = g
        .edges()
        .filter(|&(u, v)| de.vertices.contains(u) && de.vertices.contains(v) && !de.edges.contains(u, v))
        .map(|(u, v)| (index[u], index[v]))
        .collect();

    Ok(Some(W2Certificate {
        recipe: W2Recipe {
            h,
            mvc_vertices,
            step3_edges,
            h_prime: (!rest_map.is_empty()).then_some(hp),
            step4_edges,
        },
        vertex_map,
        packing: (x, y),
    }))
}

/// The packing pair minimizing `|N[x]| + |N[y]|`, lexicographically least
/// among ties. `None` when the packing number is 1.
fn extremal_packing_pair(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !g.closed_neighbors(x).intersects(g.closed_neighbors(y)))
        .min_by_key(|&(x, y)| (g.degree(x) + g.degree(y), x, y))
}
