use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;

use super::walk::{consistent, linked};
use super::MotifInstance;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::motif::{spanning_tree, Motif, RootedTree, TreeSplit};

/// Default cap on `C(n, s) * s!` for the brute-force oracle.
pub const BRUTE_FORCE_BOUND: u128 = 200_000_000;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Enumeration {
    pub instances: BTreeSet<MotifInstance>,
    /// Matching walks, i.e. structure-preserving assignments, before de-duplication.
    pub assignments: usize,
    /// Matching walks per instance.
    pub multiplicity: BTreeMap<MotifInstance, usize>,
}

/// Depth-first tree walks that skip every index sequence whose partial layout already
/// violates the motif; completed layouts are exactly the matching walks.
struct Walker<'a> {
    m: &'a Motif,
    g: &'a Graph,
    order: Vec<usize>,
    parent: Vec<usize>,
    image: Vec<VertexId>,
}

impl<'a> Walker<'a> {
    fn new(m: &'a Motif, g: &'a Graph, trees: &[&RootedTree]) -> Self {
        let mut order = Vec::with_capacity(m.s());
        let mut parent = vec![usize::MAX; m.s()];
        for t in trees {
            for &v in t.preorder() {
                order.push(v);
                if let Some(p) = t.parent(v) {
                    parent[v] = p;
                }
            }
        }
        debug_assert_eq!(order.len(), m.s());
        Walker { m, g, order, parent, image: vec![usize::MAX; m.s()] }
    }

    fn fits(&self, pos: usize, y: VertexId) -> bool {
        let c = self.order[pos];
        self.order[..pos].iter().all(|&w| {
            let x = self.image[w];
            x != y && self.m.has_edge(c, w) == linked(self.m, self.g, y, x) && self.m.has_edge(w, c) == linked(self.m, self.g, x, y)
        })
    }

    /// Visits every completed layout. `roots` gives the fixed image of every tree root, keyed by position.
    fn run<F: FnMut(&[VertexId])>(&mut self, pos: usize, roots: &[(usize, VertexId)], visit: &mut F) {
        if pos == self.order.len() {
            debug_assert!(consistent(self.m, self.g, &self.image));
            visit(&self.image);
            return;
        }
        let c = self.order[pos];
        if let Some(&(_, v)) = roots.iter().find(|&&(p, _)| p == pos) {
            if self.fits(pos, v) {
                self.image[c] = v;
                self.run(pos + 1, roots, visit);
            }
            return;
        }
        let x = self.image[self.parent[c]];
        for i in 0..self.g.walk_degree(x) {
            let y = self.g.walk_neighbor(x, i).unwrap();
            if self.fits(pos, y) {
                self.image[c] = y;
                self.run(pos + 1, roots, visit);
            }
        }
    }
}

fn instance_of(m: &Motif, image: &[VertexId]) -> MotifInstance {
    let mut vertices = image.to_vec();
    vertices.sort_unstable();
    let mut anchors: Vec<VertexId> = m.anchors().iter().map(|&a| image[a]).collect();
    anchors.sort_unstable();
    MotifInstance::new(vertices, anchors)
}

/// Walks every `(start vertex, index sequence)` pair over a spanning tree of the motif.
pub fn enumerate_walks(m: &Motif, g: &Graph) -> Enumeration {
    let tree = spanning_tree(m);
    (0..g.n())
        .into_par_iter()
        .fold(Enumeration::default, |mut acc, v| {
            let mut walker = Walker::new(m, g, &[&tree]);
            walker.run(0, &[(0, v)], &mut |image| {
                let inst = instance_of(m, image);
                *acc.multiplicity.entry(inst.clone()).or_insert(0) += 1;
                acc.instances.insert(inst);
                acc.assignments += 1;
            });
            acc
        })
        .reduce(Enumeration::default, |mut a, b| {
            a.assignments += b.assignments;
            for (inst, c) in b.multiplicity {
                *a.multiplicity.entry(inst).or_insert(0) += c;
            }
            a.instances.extend(b.instances);
            a
        })
}

pub fn enumerate_instances(m: &Motif, g: &Graph) -> BTreeSet<MotifInstance> {
    enumerate_walks(m, g).instances
}

/// Number of matching index-sequence pairs for the split trees with anchor `a` at `u`
/// and anchor `b` at `v`.
pub fn split_walk_count(m: &Motif, g: &Graph, split: &TreeSplit, u: VertexId, v: VertexId) -> usize {
    let mut walker = Walker::new(m, g, &[&split.tree_a, &split.tree_b]);
    let roots = [(0, u), (split.tree_a.size(), v)];
    let mut count = 0;
    walker.run(0, &roots, &mut |_| count += 1);
    count
}

/// Every `s`-subset under every bijection from the motif; the reference answer.
pub fn brute_force_instances(m: &Motif, g: &Graph) -> Result<BTreeSet<MotifInstance>> {
    brute_force_instances_bounded(m, g, BRUTE_FORCE_BOUND)
}

pub fn brute_force_instances_bounded(m: &Motif, g: &Graph, bound: u128) -> Result<BTreeSet<MotifInstance>> {
    let s = m.s();
    let n = g.n();
    let work = binomial(n as u128, s as u128).saturating_mul((1..=s as u128).product());
    if work > bound {
        return Err(Error::Capability(format!("brute force over {work} placements exceeds bound {bound}")));
    }
    let mut out = BTreeSet::new();
    for subset in (0..n).combinations(s) {
        for perm in (0..s).permutations(s) {
            let image: Vec<VertexId> = perm.iter().map(|&i| subset[i]).collect();
            if consistent(m, g, &image) {
                out.insert(instance_of(m, &image));
            }
        }
    }
    Ok(out)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
