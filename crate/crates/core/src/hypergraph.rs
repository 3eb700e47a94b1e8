//! Sperner families and their minimal transversals.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("a family needs at least one edge")]
    EmptyFamily,
    #[error("empty hyperedge admits no transversal")]
    EmptyEdge,
    #[error("hyperedge {edge} leaves ground set of size {ground}")]
    OutOfRange { edge: VertexSet, ground: usize },
    #[error("ground set of size {0} exceeds {MAX_VERTICES}")]
    GroundTooLarge(usize),
    #[error("family is not Sperner: {0} is contained in {1}")]
    NotSperner(VertexSet, VertexSet),
    #[error("duplicate hyperedge {0}")]
    DuplicateEdge(VertexSet),
}

/// An antichain of nonempty subsets of `0..ground`, sorted by bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpernerFamily {
    ground: usize,
    edges: Vec<VertexSet>,
}

impl SpernerFamily {
    /// Keeps the inclusion-minimal members of `raw`, deduplicated and sorted.
    pub fn minimize(ground: usize, raw: impl IntoIterator<Item = VertexSet>) -> Result<Self, HypergraphError> {
        let raw: Vec<VertexSet> = raw.into_iter().collect();
        check_members(ground, &raw)?;
        Ok(SpernerFamily {
            ground,
            edges: minimal_members(raw),
        })
    }

    /// Builds a family that must already be an antichain without duplicates.
    pub fn new(ground: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self, HypergraphError> {
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        check_members(ground, &edges)?;
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(HypergraphError::DuplicateEdge(w[0]));
            }
        }
        for &a in &edges {
            if let Some(&b) = edges.iter().find(|&&b| a.is_proper_subset(b)) {
                return Err(HypergraphError::NotSperner(a, b));
            }
        }
        Ok(SpernerFamily { ground, edges })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Union of all edges.
    pub fn support(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |a, &e| a | e)
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.edges.binary_search(&s).is_ok()
    }

    pub fn is_transversal(&self, t: VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(t))
    }

    /// A transversal is minimal iff each member has a private edge, one that
    /// `t` meets only in that member.
    pub fn is_minimal_transversal(&self, t: VertexSet) -> bool {
        self.is_transversal(t)
            && t.iter().all(|x| {
                let rest = t.without(x);
                self.edges.iter().any(|e| !e.intersects(rest))
            })
    }

    /// Removes members of `t` in ascending order while it stays a transversal.
    pub fn shrink_to_minimal(&self, t: VertexSet) -> VertexSet {
        debug_assert!(self.is_transversal(t));
        let mut t = t;
        for x in t {
            if self.is_transversal(t.without(x)) {
                t.remove(x);
            }
        }
        t
    }

    /// All minimal transversals.
    pub fn transversals(&self) -> SpernerFamily {
        enumerate_minimal_transversals(self)
    }
}

fn check_members(ground: usize, sets: &[VertexSet]) -> Result<(), HypergraphError> {
    if ground > MAX_VERTICES {
        return Err(HypergraphError::GroundTooLarge(ground));
    }
    if sets.is_empty() {
        return Err(HypergraphError::EmptyFamily);
    }
    for &e in sets {
        if e.is_empty() {
            return Err(HypergraphError::EmptyEdge);
        }
        if !e.is_subset(VertexSet::full(ground)) {
            return Err(HypergraphError::OutOfRange { edge: e, ground });
        }
    }
    Ok(())
}

/// Inclusion-minimal members, deduplicated, ascending by bitmask.
fn minimal_members(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

pub fn minimize_family(ground: usize, raw: &[VertexSet]) -> Result<SpernerFamily, HypergraphError> {
    SpernerFamily::minimize(ground, raw.iter().copied())
}

/// Exactly the minimal transversals of `h`, by Berge multiplication: the
/// transversal family is built edge by edge, extending every partial
/// transversal that misses the new edge by each of its vertices and
/// discarding non-minimal results.
pub fn enumerate_minimal_transversals(h: &SpernerFamily) -> SpernerFamily {
    let mut edges = h.edges.clone();
    // small edges first keeps intermediate families small
    edges.sort_unstable_by_key(|e| (e.len(), e.bits()));
    let mut current: Vec<VertexSet> = vec![VertexSet::EMPTY];
    for e in edges {
        let mut hit = Vec::new();
        let mut extended = Vec::new();
        for &t in &current {
            if t.intersects(e) {
                hit.push(t);
            } else {
                extended.extend(e.iter().map(|v| t.with(v)));
            }
        }
        // members of `hit` are pairwise incomparable already, and no
        // extension can be a subset of one of them; only extensions need
        // checking against everything smaller.
        extended.sort_unstable_by_key(|s| (s.len(), s.bits()));
        extended.dedup();
        let mut next = hit;
        for s in extended {
            if !next.iter().any(|k| k.is_subset(s)) {
                next.push(s);
            }
        }
        current = next;
    }
    current.sort_unstable();
    SpernerFamily {
        ground: h.ground,
        edges: current,
    }
}

/// Minimal transversals of size at most `k`, by depth-bounded branching on
/// the first edge the partial set misses. Cost is `O(r^k · poly)` for the
/// largest edge size `r`.
pub fn enumerate_bounded_minimal_transversals(h: &SpernerFamily, k: usize) -> SpernerFamily {
    fn go(h: &SpernerFamily, partial: VertexSet, k: usize, out: &mut BTreeSet<VertexSet>) {
        match h.edges.iter().find(|e| !e.intersects(partial)) {
            None => {
                if h.is_minimal_transversal(partial) {
                    out.insert(partial);
                }
            }
            Some(&e) => {
                if partial.len() == k {
                    return;
                }
                for v in e {
                    go(h, partial.with(v), k, out);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(h, VertexSet::EMPTY, k, &mut out);
    SpernerFamily {
        ground: h.ground,
        edges: out.into_iter().collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeVerdict {
    /// Every minimal transversal has size exactly `k`; the certificate is one
    /// of them.
    AllSizeK,
    /// The certificate is a minimal transversal smaller than `k`.
    Smaller,
    /// The certificate is a minimal transversal larger than `k`.
    Larger,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeDecision {
    pub verdict: SizeVerdict,
    pub certificate: VertexSet,
}

impl SizeDecision {
    pub fn holds(&self) -> bool {
        self.verdict == SizeVerdict::AllSizeK
    }
}

/// Decides whether every minimal transversal of `h` has size exactly `k`.
///
/// The size-bounded enumeration collects all minimal transversals of size
/// at most `k`. Completeness is then checked by dualizing that collection:
/// it equals the full transversal family iff its own transversal family is
/// `h` again. On a mismatch, some minimal transversal of the collection
/// contains no edge of `h`; its complement is a transversal of `h` avoiding
/// the collection, and shrinking it yields a minimal transversal larger
/// than `k`.
pub fn all_minimal_transversals_have_size_k(h: &SpernerFamily, k: usize) -> SizeDecision {
    assert!(k >= 1, "k must be positive");
    let small = enumerate_bounded_minimal_transversals(h, k);
    if let Some(&t) = small.edges.iter().find(|t| t.len() < k) {
        return SizeDecision {
            verdict: SizeVerdict::Smaller,
            certificate: t,
        };
    }
    let universe = VertexSet::full(h.ground);
    if small.is_empty() {
        return SizeDecision {
            verdict: SizeVerdict::Larger,
            certificate: h.shrink_to_minimal(h.support()),
        };
    }
    let dual = enumerate_minimal_transversals(&small);
    if dual.edges == h.edges {
        return SizeDecision {
            verdict: SizeVerdict::AllSizeK,
            certificate: small.edges[0],
        };
    }
    let x = dual
        .edges
        .iter()
        .copied()
        .find(|x| !h.edges.iter().any(|e| e.is_subset(*x)))
        .expect("a duality gap always exposes an edge-free transversal");
    let witness = h.shrink_to_minimal(universe - x);
    debug_assert!(witness.len() > k);
    SizeDecision {
        verdict: SizeVerdict::Larger,
        certificate: witness,
    }
}
