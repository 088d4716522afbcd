//! Motif matching, instance enumeration, motif-graph construction and motif cut measures.

mod build;
mod cuts;
mod enumerate;
mod walk;

pub use build::{
    assignment_weights, build_motif_graph_approx, build_motif_graph_exact, build_motif_graph_multi,
    motif_graph_from_instances, split_count_weight, MotifGraph, Provenance,
};
pub use cuts::{
    conductance, cut_weight, motif_conductance, motif_cut, motif_ratio_cut, motif_volume, ratio_cut, volume,
};
pub use enumerate::{
    brute_force_instances, brute_force_instances_bounded, enumerate_instances, enumerate_walks, split_walk_count,
    Enumeration, BRUTE_FORCE_BOUND,
};
pub use walk::{is_match, tree_walk};

use crate::graph::VertexId;

/// One equivalence class of assignments: the image vertex set and the image anchor set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotifInstance {
    vertices: Vec<VertexId>,
    anchors: Vec<VertexId>,
}

impl MotifInstance {
    pub(crate) fn new(vertices: Vec<VertexId>, anchors: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|p| p[0] < p[1]));
        debug_assert!(anchors.windows(2).all(|p| p[0] < p[1]));
        MotifInstance { vertices, anchors }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn anchors(&self) -> &[VertexId] {
        &self.anchors
    }
}
