//! Motif graphs, motif spectral clustering and cost models for quantum motif clustering.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod engine;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod motif;
pub mod quantum;
pub mod spectral;
pub mod verify;

pub use engine::{MotifGraph, MotifInstance, Provenance};
pub use error::{Error, Result};
pub use graph::{emit_graph, parse_graph, Graph, LabeledGraph, VertexId, VertexSet};
pub use motif::{parse_motif, Motif, SymmetryProfile};
pub use spectral::{Mode, Partition};
