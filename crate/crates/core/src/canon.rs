//! Canonical labeling for isomorphism rejection.
//!
//! Individualization-refinement search: the ordered partition is refined to
//! an equitable one, the first smallest non-singleton cell is branched on,
//! and the lexicographically largest relabeled adjacency matrix over all
//! leaves is the canonical form. Children are pruned by twin vertices and by
//! automorphisms discovered from equal leaves.

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical labeling supports at most {bound} vertices, got {n}")]
pub struct CapabilityError {
    pub n: usize,
    pub bound: usize,
}

/// Isomorphism-invariant byte encoding; equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, CapabilityError> {
    canonical_form_bounded(g, CANON_BOUND)
}

pub fn canonical_form_bounded(g: &Graph, bound: usize) -> Result<Vec<u8>, CapabilityError> {
    let perm = canonical_labeling_bounded(g, bound)?;
    Ok(encode(&g.relabel(&perm)))
}

/// A permutation `perm` (vertex `v` becomes `perm[v]`) taking `g` to its
/// canonical representative.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, CapabilityError> {
    canonical_labeling_bounded(g, CANON_BOUND)
}

fn canonical_labeling_bounded(g: &Graph, bound: usize) -> Result<Vec<usize>, CapabilityError> {
    let n = g.n();
    if n > bound {
        return Err(CapabilityError { n, bound });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    search.descend(vec![(0..n).collect()], &mut Vec::new());
    Ok(search.best.expect("at least one leaf").1)
}

/// The canonical representative, unlabeled.
pub fn canonical_graph(g: &Graph) -> Result<Graph, CapabilityError> {
    let perm = canonical_labeling(g)?;
    Ok(g.relabel(&perm).without_labels())
}

pub(crate) fn encode(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let row_bytes = n.div_ceil(8);
    let mut out = Vec::with_capacity(1 + n * row_bytes);
    out.push(n as u8);
    for v in 0..n {
        let bits = g.neighbors(v).bits().to_le_bytes();
        out.extend_from_slice(&bits[..row_bytes]);
    }
    out
}

type Cells = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a Graph,
    /// Best certificate so far and the labeling producing it.
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Cells, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        if cells.len() == self.g.n() {
            self.leaf(&cells);
            return;
        }
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .unwrap();

        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            if !tried.is_empty() && self.equivalent_to_tried(prefix, &tried, v) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            tried.push(v);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        self.g.neighbors(u).without(v) == self.g.neighbors(v).without(u)
    }

    /// Whether `v` lies in the orbit of a tried vertex under the group
    /// generated by known automorphisms fixing `prefix` pointwise.
    fn equivalent_to_tried(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().all(|&x| gamma[x] == x) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, cells: &Cells) {
        let n = self.g.n();
        let mut perm = vec![0; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let mut cert = vec![0u64; n];
        for v in 0..n {
            cert[perm[v]] = self.g.neighbors(v).map(&perm).bits();
        }
        match &self.best {
            None => self.best = Some((cert, perm)),
            Some((best, best_perm)) => {
                if cert > *best {
                    self.best = Some((cert, perm));
                } else if cert == *best {
                    // best_perm^-1 ∘ perm is an automorphism
                    let mut inv = vec![0; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let gamma: Vec<usize> = (0..n).map(|v| inv[perm[v]]).collect();
                    if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(gamma);
                    }
                }
            }
        }
    }
}

/// Refines an ordered partition to the coarsest equitable refinement.
/// Splits depend only on neighbor counts and cell order, so the result is
/// isomorphism-invariant.
fn refine(g: &Graph, cells: &mut Cells) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter: VertexSet = cells[s].iter().copied().collect();
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let count = |v: usize| (g.neighbors(v) & splitter).len();
                let first = count(cells[c][0]);
                if cells[c].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cells[c].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut pieces: Vec<Vec<usize>> = Vec::new();
                let mut last = usize::MAX;
                for (k, v) in keyed {
                    if k != last {
                        pieces.push(Vec::new());
                        last = k;
                    }
                    pieces.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, pieces);
                continue 'restart;
            }
        }
        break;
    }
}
