use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::enumerate::{enumerate_instances, enumerate_walks, split_walk_count};
use super::MotifInstance;
use crate::error::{Error, Result};
use crate::graph::{emit_graph, Graph, VertexId};
use crate::motif::{spanning_tree_split, symmetry_profile, Motif, TreeSplit};
use crate::quantum::Counter;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Exact,
    Approx { eps: f64, delta: f64, seed: u64 },
    Weighted,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exact => write!(f, "exact"),
            Provenance::Approx { eps, delta, seed } => write!(f, "approx eps={eps} delta={delta} seed={seed}"),
            Provenance::Weighted => write!(f, "weighted"),
        }
    }
}

/// An undirected weighted graph on the input's vertex ids, with cached motif degrees and strengths.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifGraph {
    graph: Graph,
    provenance: Provenance,
    degree: Vec<usize>,
    strength: Vec<f64>,
}

impl MotifGraph {
    pub fn new(graph: Graph, provenance: Provenance) -> Self {
        assert!(!graph.is_directed(), "motif graphs are undirected");
        let degree = (0..graph.n()).map(|v| graph.degree(v)).collect();
        let strength = (0..graph.n()).map(|v| graph.strength(v)).collect();
        MotifGraph { graph, provenance, degree, strength }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn motif_degree(&self, u: VertexId) -> usize {
        self.degree[u]
    }

    pub fn strength(&self, u: VertexId) -> f64 {
        self.strength[u]
    }

    /// Edge-list text followed by a `# provenance` trailer.
    pub fn emit(&self) -> String {
        let mut out = emit_graph(&self.graph);
        out.push_str(&format!("# provenance {}\n", self.provenance));
        out
    }
}

fn graph_from_pairs(n: usize, pairs: impl IntoIterator<Item = ((VertexId, VertexId), f64)>) -> Graph {
    let mut adj: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); n];
    for ((u, v), w) in pairs {
        if w > 0.0 {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
    }
    for list in &mut adj {
        list.sort_by_key(|&(v, _)| v);
    }
    Graph::from_sorted(n, false, adj)
}

/// Weight of `{u, v}` = number of instances whose anchor set contains both.
pub fn motif_graph_from_instances<'a, I>(n: usize, instances: I) -> Graph
where
    I: IntoIterator<Item = &'a MotifInstance>,
{
    let mut counts: BTreeMap<(VertexId, VertexId), u64> = BTreeMap::new();
    for inst in instances {
        let a = inst.anchors();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                *counts.entry((a[i], a[j])).or_insert(0) += 1;
            }
        }
    }
    graph_from_pairs(n, counts.into_iter().map(|(k, c)| (k, c as f64)))
}

pub fn build_motif_graph_exact(m: &Motif, g: &Graph) -> MotifGraph {
    let instances = enumerate_instances(m, g);
    MotifGraph::new(motif_graph_from_instances(g.n(), &instances), Provenance::Exact)
}

/// Counts anchor pairs over every matching walk, then divides by the number of
/// anchor-preserving automorphisms.
pub fn assignment_weights(m: &Motif, g: &Graph) -> Result<Graph> {
    let sym = symmetry_profile(m)?.automorphisms as f64;
    let walks = enumerate_walks(m, g);
    let mut counts: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for (inst, mult) in &walks.multiplicity {
        let a = inst.anchors();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                *counts.entry((a[i], a[j])).or_insert(0) += mult;
            }
        }
    }
    Ok(graph_from_pairs(g.n(), counts.into_iter().map(|(k, c)| (k, c as f64 / sym))))
}

/// Exact weight of `{u, v}` from split-tree walks in both anchor orientations.
pub fn split_count_weight(m: &Motif, g: &Graph, split: &TreeSplit, automorphisms: usize, u: VertexId, v: VertexId) -> u64 {
    let total = split_walk_count(m, g, split, u, v) + split_walk_count(m, g, split, v, u);
    debug_assert_eq!(total % automorphisms, 0);
    (total / automorphisms) as u64
}

/// Two-anchor motif graph with every weight drawn from `counter`. Only pairs within anchor
/// distance of each other are examined; zero counts never produce an edge.
pub fn build_motif_graph_approx(m: &Motif, g: &Graph, eps: f64, delta: f64, counter: &dyn Counter) -> Result<MotifGraph> {
    if m.anchors().len() != 2 {
        return Err(Error::arg("approximate construction needs exactly two anchors; decompose the motif first"));
    }
    if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::arg(format!("need 0 < eps < 1 and 0 < delta < 1, got eps={eps}, delta={delta}")));
    }
    let (a, b) = (m.anchors()[0], m.anchors()[1]);
    let profile = symmetry_profile(m)?;
    let split = spanning_tree_split(m, a, b)?;
    let n = g.n();
    let pair_delta = delta / (n.max(1) as f64).powi(2);
    let search_space = (g.max_walk_degree().max(1) as f64).powi(m.s() as i32 - 2);

    let rows: Vec<Vec<((VertexId, VertexId), f64)>> = (0..n)
        .into_par_iter()
        .map(|u| {
            g.ball(u, profile.anchor_distance)
                .into_iter()
                .filter(|&v| v > u)
                .filter_map(|v| {
                    let t = split_count_weight(m, g, &split, profile.automorphisms, u, v);
                    let w = counter.estimate(t, eps, pair_delta, search_space, (u, v));
                    (w > 0.0).then_some(((u, v), w))
                })
                .collect()
        })
        .collect();
    let graph = graph_from_pairs(n, rows.into_iter().flatten());
    Ok(MotifGraph::new(graph, Provenance::Approx { eps, delta, seed: counter.seed() }))
}

/// `Σ α_j A_j` over exact motif graphs.
pub fn build_motif_graph_multi(parts: &[(f64, Motif)], g: &Graph) -> Result<MotifGraph> {
    if parts.is_empty() {
        return Err(Error::arg("weighted combination needs at least one motif"));
    }
    let mut sum: BTreeMap<(VertexId, VertexId), f64> = BTreeMap::new();
    for (alpha, m) in parts {
        if !(*alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::arg(format!("motif coefficients must be positive, got {alpha}")));
        }
        for (u, v, w) in build_motif_graph_exact(m, g).graph().edges() {
            *sum.entry((u, v)).or_insert(0.0) += alpha * w;
        }
    }
    Ok(MotifGraph::new(graph_from_pairs(g.n(), sum), Provenance::Weighted))
}
