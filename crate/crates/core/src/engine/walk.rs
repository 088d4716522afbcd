use crate::graph::{Graph, VertexId};
use crate::motif::{Motif, RootedTree};

/// Lays `tree` out around `v`, consuming one neighbour index per non-root tree vertex in
/// pre-order. Indices past the end of a neighbour list leave that subtree unplaced (its
/// indices are still consumed), so the result may be shorter than the tree.
pub fn tree_walk(tree: &RootedTree, g: &Graph, v: VertexId, seq: &[usize]) -> Vec<(usize, VertexId)> {
    let mut image: Vec<Option<VertexId>> = vec![None; tree.preorder().iter().max().map_or(0, |&x| x + 1)];
    image[tree.root()] = Some(v);
    let mut out = vec![(tree.root(), v)];
    for (&c, &idx) in tree.preorder()[1..].iter().zip(seq) {
        let parent = tree.parent(c).unwrap();
        if let Some(x) = image[parent] {
            if let Some(y) = g.walk_neighbor(x, idx) {
                image[c] = Some(y);
                out.push((c, y));
            }
        }
    }
    out
}

/// Edge test between graph vertices with the orientation semantics of `m`: a directed
/// motif needs the exact arc, an undirected one accepts either orientation.
#[inline]
pub(crate) fn linked(m: &Motif, g: &Graph, x: VertexId, y: VertexId) -> bool {
    if m.is_directed() || !g.is_directed() {
        g.contains_edge(x, y)
    } else {
        g.contains_edge(x, y) || g.contains_edge(y, x)
    }
}

/// True iff `assignment` places every motif vertex on a distinct graph vertex and maps
/// edges to edges and non-edges to non-edges.
pub fn is_match(m: &Motif, g: &Graph, assignment: &[(usize, VertexId)]) -> bool {
    let s = m.s();
    if assignment.len() != s {
        return false;
    }
    let mut image = vec![usize::MAX; s];
    for &(b, v) in assignment {
        if b >= s || image[b] != usize::MAX || v >= g.n() {
            return false;
        }
        image[b] = v;
    }
    let mut used = image.clone();
    used.sort_unstable();
    if used.windows(2).any(|p| p[0] == p[1]) {
        return false;
    }
    consistent(m, g, &image)
}

pub(crate) fn consistent(m: &Motif, g: &Graph, image: &[VertexId]) -> bool {
    let s = m.s();
    for i in 0..s {
        for j in 0..s {
            if i == j || (!m.is_directed() && j < i) {
                continue;
            }
            if m.has_edge(i, j) != linked(m, g, image[i], image[j]) {
                return false;
            }
        }
    }
    true
}
