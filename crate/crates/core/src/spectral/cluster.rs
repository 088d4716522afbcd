use std::fmt::Write as _;

use nalgebra::DMatrix;

use super::eigen::laplacian_eigenpairs;
use super::kmeans::kmeans;
use super::laplacian::{require_undirected, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Unnormalised Laplacian; targets ratio cut.
    RatioCut,
    /// Normalised Laplacian with unit-length rows; targets conductance.
    Conductance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
    isolated: Vec<VertexId>,
}

impl Partition {
    /// Labels below `k` are spectral clusters; every isolated vertex gets its own label from `k` up.
    pub fn new(labels: Vec<usize>, k: usize, isolated: Vec<VertexId>) -> Self {
        Partition { labels, k, isolated }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn isolated(&self) -> &[VertexId] {
        &self.isolated
    }

    pub fn cluster_count(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn members(&self, cluster: usize) -> Vec<VertexId> {
        (0..self.labels.len()).filter(|&v| self.labels[v] == cluster).collect()
    }

    /// `label<TAB>cluster` lines using the given original vertex labels.
    pub fn to_tsv(&self, names: &[u64]) -> String {
        let mut out = String::new();
        for (v, c) in self.labels.iter().enumerate() {
            writeln!(out, "{}\t{c}", names[v]).unwrap();
        }
        out
    }
}

/// Rows of the `k` smallest Laplacian eigenvectors; unit-length rows in conductance mode.
pub fn spectral_embedding(g: &Graph, k: usize, mode: Mode) -> Result<DMatrix<f64>> {
    let kind = match mode {
        Mode::RatioCut => LaplacianKind::Combinatorial,
        Mode::Conductance => LaplacianKind::Normalized,
    };
    let mut x = laplacian_eigenpairs(g, k, kind)?.vectors;
    if mode == Mode::Conductance {
        for (i, mut r) in x.row_iter_mut().enumerate() {
            let norm = r.norm();
            assert!(norm > 0.0, "zero embedding row at vertex {i}");
            r /= norm;
        }
    }
    Ok(x)
}

/// Spectral clustering into `k` clusters after setting aside zero-degree vertices as singletons.
pub fn spectral_cluster(g: &Graph, k: usize, mode: Mode, seed: u64) -> Result<Partition> {
    require_undirected(g)?;
    if k < 2 {
        return Err(Error::arg(format!("need k >= 2, got {k}")));
    }
    let (active, isolated): (Vec<VertexId>, Vec<VertexId>) = (0..g.n()).partition(|&v| g.degree(v) > 0);
    if active.len() < k {
        return Err(Error::arg(format!("only {} non-isolated vertices for k = {k}", active.len())));
    }
    let core = g.induced(&active);
    let embedding = spectral_embedding(&core, k, mode)?;
    let fit = kmeans(&embedding, k, seed)?;
    let mut labels = vec![0; g.n()];
    for (i, &v) in active.iter().enumerate() {
        labels[v] = fit.labels[i];
    }
    for (j, &v) in isolated.iter().enumerate() {
        labels[v] = k + j;
    }
    Ok(Partition { labels, k, isolated })
}
