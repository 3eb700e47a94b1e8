//! Exact planarity testing by path addition (Demoucron, Malgrange and
//! Pertuiset) applied to each biconnected component.
//!
//! Quadratic in the worst case, which is irrelevant at the sizes the crate
//! supports.

use crate::bitset::VertexSet;
use crate::graph::Graph;

pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n <= 4 {
        return true;
    }
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|b| block_is_planar(&b))
}

/// A biconnected block as per-vertex adjacency restricted to the block.
struct Block {
    vertices: VertexSet,
    adj: Vec<VertexSet>,
    edges: usize,
}

/// Biconnected components (Hopcroft-Tarjan with an edge stack).
fn blocks(g: &Graph) -> Vec<Block> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Block>,
    }

    fn pop_block(st: &mut State, u: usize, v: usize) {
        let mut adj = vec![VertexSet::EMPTY; st.g.n()];
        let mut vertices = VertexSet::EMPTY;
        let mut edges = 0;
        while let Some((a, b)) = st.stack.pop() {
            adj[a].insert(b);
            adj[b].insert(a);
            vertices = vertices.with(a).with(b);
            edges += 1;
            if (a, b) == (u, v) {
                break;
            }
        }
        st.out.push(Block { vertices, adj, edges });
    }

    fn dfs(st: &mut State, u: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for v in st.g.neighbors(u) {
            if st.disc[v] == 0 {
                st.stack.push((u, v));
                dfs(st, v, Some(u));
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    pop_block(st, u, v);
                }
            } else if Some(v) != parent && st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }

    let n = g.n();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if st.disc[v] == 0 {
            dfs(&mut st, v, None);
        }
    }
    st.out
}

struct Fragment {
    attachments: VertexSet,
    /// Vertices not yet embedded; empty for a chord.
    interior: VertexSet,
}

fn block_is_planar(b: &Block) -> bool {
    let nv = b.vertices.len();
    // a Kuratowski subdivision inside a block forces m >= n + 3
    if nv <= 4 || b.edges <= nv + 2 {
        return true;
    }
    if b.edges > 3 * nv - 6 {
        return false;
    }

    let Some(cycle) = find_cycle(b) else {
        return true;
    };
    let mut emb_v: VertexSet = cycle.iter().copied().collect();
    let mut emb_adj = vec![VertexSet::EMPTY; b.adj.len()];
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb_adj[u].insert(v);
        emb_adj[v].insert(u);
    }
    let mut emb_edges = cycle.len();
    let mut faces = vec![cycle.clone(), cycle];

    while emb_edges < b.edges {
        let fragments = fragments(b, emb_v, &emb_adj);
        let face_sets: Vec<VertexSet> = faces.iter().map(|f| f.iter().copied().collect()).collect();

        let mut choice = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.is_subset(face_sets[f]))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("unembedded edges imply a fragment");
        let path = fragment_path(b, &fragments[fi], emb_v);

        for w in &path {
            emb_v.insert(*w);
        }
        for pair in path.windows(2) {
            emb_adj[pair[0]].insert(pair[1]);
            emb_adj[pair[1]].insert(pair[0]);
            emb_edges += 1;
        }

        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    true
}

/// Some cycle of the block: an edge closed by a shortest detour.
fn find_cycle(b: &Block) -> Option<Vec<usize>> {
    let u = b.vertices.first()?;
    let v = b.adj[u].first()?;
    // BFS from v to u avoiding the edge uv
    let n = b.adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([v]);
    let mut seen = VertexSet::singleton(v);
    while let Some(x) = queue.pop_front() {
        for y in b.adj[x] {
            if x == v && y == u || seen.contains(y) {
                continue;
            }
            seen.insert(y);
            prev[y] = x;
            if y == u {
                let mut cycle = vec![u];
                let mut c = x;
                while c != v {
                    cycle.push(c);
                    c = prev[c];
                }
                cycle.push(v);
                return Some(cycle);
            }
            queue.push_back(y);
        }
    }
    None
}

fn fragments(b: &Block, emb_v: VertexSet, emb_adj: &[VertexSet]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in emb_v {
        for v in (b.adj[u] & emb_v) - emb_adj[u] {
            if u < v {
                out.push(Fragment {
                    attachments: VertexSet::singleton(u).with(v),
                    interior: VertexSet::EMPTY,
                });
            }
        }
    }
    let mut left = b.vertices - emb_v;
    while let Some(s) = left.first() {
        let mut comp = VertexSet::singleton(s);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for x in frontier {
                next |= b.adj[x];
            }
            next = next - emb_v - comp;
            comp |= next;
            frontier = next;
        }
        let mut attachments = VertexSet::EMPTY;
        for x in comp {
            attachments |= b.adj[x] & emb_v;
        }
        left = left - comp;
        out.push(Fragment {
            attachments,
            interior: comp,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(b: &Block, frag: &Fragment, emb_v: VertexSet) -> Vec<usize> {
    if frag.interior.is_empty() {
        return frag.attachments.to_vec();
    }
    let a = frag.attachments.first().expect("fragment of a block has attachments");
    let others = frag.attachments.without(a);
    let start = (b.adj[a] & frag.interior).first().expect("attachment touches interior");
    let n = b.adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([start]);
    let mut seen = VertexSet::singleton(start);
    while let Some(x) = queue.pop_front() {
        if let Some(end) = (b.adj[x] & others & emb_v).first() {
            let mut inner = vec![x];
            let mut c = x;
            while c != start {
                c = prev[c];
                inner.push(c);
            }
            inner.reverse();
            let mut path = vec![a];
            path.extend(inner);
            path.push(end);
            return path;
        }
        for y in (b.adj[x] & frag.interior) - seen {
            seen.insert(y);
            prev[y] = x;
            queue.push_back(y);
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments")
}

/// Splits a face boundary along a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let k = face.len();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];

    // a -> b along the face, then back along the path
    let mut f1 = Vec::new();
    let mut p = i;
    while p != j {
        f1.push(face[p]);
        p = (p + 1) % k;
    }
    f1.push(b);
    f1.extend(inner.iter().rev());

    // b -> a along the face, then forward along the path
    let mut f2 = Vec::new();
    let mut p = j;
    while p != i {
        f2.push(face[p]);
        p = (p + 1) % k;
    }
    f2.push(a);
    f2.extend(inner.iter());
    (f1, f2)
}
