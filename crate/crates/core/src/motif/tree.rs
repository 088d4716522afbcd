use std::collections::VecDeque;

use super::Motif;
use crate::error::{Error, Result};

/// A tree over a subset of motif vertices, children in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
}

impl RootedTree {
    /// Roots the tree spanned by `edges` (undirected, over vertices `0..s`) at `root`.
    /// Vertices not reachable from `root` are not members.
    pub fn from_edges(s: usize, root: usize, edges: &[(usize, usize)]) -> Self {
        let mut nbrs = vec![Vec::new(); s];
        for &(u, v) in edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut parent = vec![None; s];
        let mut children = vec![Vec::new(); s];
        let mut seen = vec![false; s];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let mut next: Vec<usize> = nbrs[u].iter().copied().filter(|&v| !seen[v]).collect();
            next.sort_unstable();
            for v in next {
                seen[v] = true;
                parent[v] = Some(u);
                children[u].push(v);
                queue.push_back(v);
            }
        }
        let mut preorder = Vec::new();
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            preorder.push(u);
            stack.extend(children[u].iter().rev());
        }
        RootedTree { root, parent, children, preorder }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn size(&self) -> usize {
        self.preorder.len()
    }

    /// Members in pre-order; the root comes first.
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.preorder.contains(&v)
    }

    /// `(parent, child)` pairs in pre-order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.preorder[1..].iter().map(|&c| (self.parent[c].unwrap(), c)).collect()
    }
}

/// Breadth-first spanning tree of the motif (direction ignored) rooted at vertex 0.
pub fn spanning_tree(m: &Motif) -> RootedTree {
    spanning_tree_from(m, 0)
}

fn spanning_tree_from(m: &Motif, root: usize) -> RootedTree {
    let mut edges = Vec::new();
    for u in 0..m.s() {
        for v in m.undirected_neighbors(u) {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    RootedTree::from_edges(m.s(), root, &edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSplit {
    /// Spanning tree edges as `(parent, child)` from the breadth-first search at `a`.
    pub tree_edges: Vec<(usize, usize)>,
    pub removed: (usize, usize),
    pub tree_a: RootedTree,
    pub tree_b: RootedTree,
}

/// Breadth-first spanning tree from `a`, split by removing the first edge on the tree path
/// from `a` to `b`.
pub fn spanning_tree_split(m: &Motif, a: usize, b: usize) -> Result<TreeSplit> {
    if a == b || !m.is_anchor(a) || !m.is_anchor(b) {
        return Err(Error::arg(format!("({a}, {b}) is not a pair of distinct anchors")));
    }
    let tree = spanning_tree_from(m, a);
    let tree_edges = tree.edges();
    let mut step = b;
    while tree.parent(step) != Some(a) {
        step = tree.parent(step).unwrap();
    }
    let removed = (a, step);
    let kept: Vec<(usize, usize)> = tree_edges.iter().copied().filter(|&e| e != removed).collect();
    let tree_a = RootedTree::from_edges(m.s(), a, &kept);
    let tree_b = RootedTree::from_edges(m.s(), b, &kept);
    debug_assert_eq!(tree_a.size() + tree_b.size(), m.s());
    Ok(TreeSplit { tree_edges, removed, tree_a, tree_b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_split() {
        let m = Motif::builtin("triangle2").unwrap();
        let split = spanning_tree_split(&m, 0, 1).unwrap();
        assert_eq!(split.removed, (0, 1));
        assert_eq!(split.tree_a.preorder(), &[0, 2]);
        assert_eq!(split.tree_b.preorder(), &[1]);
    }

    #[test]
    fn path_split_roots_each_tree_at_an_anchor() {
        let m = Motif::builtin("path2").unwrap();
        let split = spanning_tree_split(&m, 0, 2).unwrap();
        assert_eq!(split.removed, (0, 1));
        assert_eq!(split.tree_a.preorder(), &[0]);
        assert_eq!(split.tree_b.preorder(), &[2, 1]);
        assert_eq!(split.tree_b.parent(1), Some(2));
    }

    #[test]
    fn spanning_tree_preorder() {
        let m = Motif::builtin("clique4a2").unwrap();
        let t = spanning_tree(&m);
        assert_eq!(t.preorder(), &[0, 1, 2, 3]);
        assert_eq!(t.children(0), &[1, 2, 3]);
    }

    #[test]
    fn split_rejects_non_anchors() {
        let m = Motif::builtin("path2").unwrap();
        assert!(spanning_tree_split(&m, 0, 1).is_err());
        assert!(spanning_tree_split(&m, 0, 0).is_err());
    }
}
