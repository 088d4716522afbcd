use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `D - A`
    Combinatorial,
    /// `I - D^{-1/2} A D^{-1/2}`
    Normalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianPair {
    pub combinatorial: DMatrix<f64>,
    /// Present only when every degree is positive.
    pub normalized: Option<DMatrix<f64>>,
}

pub(crate) fn require_undirected(g: &Graph) -> Result<()> {
    if g.is_directed() {
        return Err(Error::arg("Laplacians are defined here for undirected graphs only"));
    }
    Ok(())
}

pub fn laplacian(g: &Graph) -> Result<DMatrix<f64>> {
    require_undirected(g)?;
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for u in 0..n {
        for &(v, w) in g.neighbors(u) {
            l[(u, v)] = -w;
        }
        l[(u, u)] = g.strength(u);
    }
    Ok(l)
}

pub fn normalized_laplacian(g: &Graph) -> Result<Option<DMatrix<f64>>> {
    require_undirected(g)?;
    let n = g.n();
    let strength: Vec<f64> = (0..n).map(|v| g.strength(v)).collect();
    if strength.iter().any(|&d| d <= 0.0) {
        return Ok(None);
    }
    let inv: Vec<f64> = strength.iter().map(|d| 1.0 / d.sqrt()).collect();
    let mut l = DMatrix::identity(n, n);
    for u in 0..n {
        for &(v, w) in g.neighbors(u) {
            l[(u, v)] = -w * inv[u] * inv[v];
        }
    }
    Ok(Some(l))
}

pub fn laplacian_pair(g: &Graph) -> Result<LaplacianPair> {
    Ok(LaplacianPair { combinatorial: laplacian(g)?, normalized: normalized_laplacian(g)? })
}

/// `Σ_{uv ∈ E} w_uv (x_u - x_v)^2`, i.e. `xᵀ L x` without forming `L`.
pub fn quadratic_form(g: &Graph, x: &[f64]) -> f64 {
    g.edges().map(|(u, v, w)| w * (x[u] - x[v]).powi(2)).sum()
}

/// Matrix-free Laplacian product for the iterative eigensolver.
pub(crate) struct LaplacianOp<'a> {
    g: &'a Graph,
    kind: LaplacianKind,
    strength: Vec<f64>,
    inv_sqrt: Vec<f64>,
}

impl<'a> LaplacianOp<'a> {
    pub fn new(g: &'a Graph, kind: LaplacianKind) -> Self {
        let strength: Vec<f64> = (0..g.n()).map(|v| g.strength(v)).collect();
        let inv_sqrt = strength.iter().map(|&d| if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 }).collect();
        LaplacianOp { g, kind, strength, inv_sqrt }
    }

    /// Gershgorin bound on the largest eigenvalue.
    pub fn upper_bound(&self) -> f64 {
        match self.kind {
            LaplacianKind::Combinatorial => 2.0 * self.strength.iter().copied().fold(0.0, f64::max),
            LaplacianKind::Normalized => 2.0,
        }
    }

    pub fn apply(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.g.n();
        let m = x.ncols();
        // Rows of `x` as contiguous columns of the transpose.
        let xt = x.transpose();
        let mut yt = DMatrix::zeros(m, n);
        let normalized = self.kind == LaplacianKind::Normalized;
        for u in 0..n {
            let mut acc = yt.column_mut(u);
            for &(v, w) in self.g.neighbors(u) {
                let coef = if normalized { w * self.inv_sqrt[v] } else { w };
                acc.axpy(-coef, &xt.column(v), 1.0);
            }
            if normalized {
                acc *= self.inv_sqrt[u];
                acc += xt.column(u);
            } else {
                acc.axpy(self.strength[u], &xt.column(u), 1.0);
            }
        }
        yt.transpose()
    }
}

pub(crate) fn spectral_norm_sym(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().symmetric_eigenvalues().iter().fold(0.0, |a: f64, &x| a.max(x.abs()))
}
