use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::laplacian::{require_undirected, spectral_norm_sym};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Every weight multiplied by an independent uniform factor in `[1 - eps, 1 + eps]`.
pub fn perturb_weights(g: &Graph, eps: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::arg(format!("perturbation needs 0 <= eps <= 1, got {eps}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(g.reweighted(|_, _, w| if eps == 0.0 { w } else { w * rng.random_range(1.0 - eps..=1.0 + eps) }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichResult {
    pub holds: bool,
    /// Smallest eigenvalue of `L̃ - (1-ε)L`.
    pub lower_margin: f64,
    /// Smallest eigenvalue of `(1+ε)L - L̃`.
    pub upper_margin: f64,
    pub tol: f64,
    /// Eigenvector of the most violated side when the ordering fails.
    pub witness: Option<DVector<f64>>,
}

fn min_eigenpair(m: DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = SymmetricEigen::new(m);
    let i = eig.eigenvalues.imin();
    (eig.eigenvalues[i], eig.eigenvectors.column(i).into_owned())
}

/// Checks `(1-ε)L ⪯ L̃ ⪯ (1+ε)L` up to `1e-9·‖L‖`.
pub fn sandwich_check(l: &DMatrix<f64>, l_tilde: &DMatrix<f64>, eps: f64) -> SandwichResult {
    assert_eq!(l.shape(), l_tilde.shape(), "matrix shapes differ");
    let tol = 1e-9 * spectral_norm_sym(l);
    let (lower_margin, lower_vec) = min_eigenpair(l_tilde - l * (1.0 - eps));
    let (upper_margin, upper_vec) = min_eigenpair(l * (1.0 + eps) - l_tilde);
    let holds = lower_margin >= -tol && upper_margin >= -tol;
    let witness = (!holds).then_some(if lower_margin < upper_margin { lower_vec } else { upper_vec });
    SandwichResult { holds, lower_margin, upper_margin, tol, witness }
}

/// `D^{-1/2} M D^{-1/2}` for the given degrees.
pub fn degree_conjugate(m: &DMatrix<f64>, degrees: &[f64]) -> DMatrix<f64> {
    let inv: Vec<f64> = degrees.iter().map(|d| 1.0 / d.sqrt()).collect();
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * inv[i] * inv[j])
}

#[derive(Debug, Clone, PartialEq)]
pub enum NoGo {
    /// `ṽᵀ[L̃_norm - (1-δ)L_norm]ṽ` with `ṽ = D̃^{1/2}·1`.
    Certificate { value: f64, perturbed: Graph },
    /// Perturbed degrees are a constant multiple of the original ones; no certificate exists.
    Degenerate,
}

fn check_nogo_input(g: &Graph) -> Result<()> {
    require_undirected(g)?;
    if g.n() < 2 || !g.is_connected() {
        return Err(Error::arg("normalized no-go check needs a connected graph; restrict to a component"));
    }
    Ok(())
}

/// Evaluates the certificate for a given perturbed graph on the same edge set.
pub fn nogo_certificate(g: &Graph, perturbed: &Graph, delta: f64) -> Result<NoGo> {
    check_nogo_input(g)?;
    if perturbed.n() != g.n() {
        return Err(Error::arg("graphs differ in vertex count"));
    }
    let d: Vec<f64> = (0..g.n()).map(|v| g.strength(v)).collect();
    let dt: Vec<f64> = (0..g.n()).map(|v| perturbed.strength(v)).collect();
    let ratio0 = dt[0] / d[0];
    if d.iter().zip(&dt).all(|(a, b)| (b / a - ratio0).abs() <= 1e-12 * ratio0) {
        return Ok(NoGo::Degenerate);
    }
    let v: Vec<f64> = dt.iter().map(|x| x.sqrt()).collect();
    let form = |graph: &Graph, deg: &[f64]| -> f64 {
        graph
            .edges()
            .map(|(a, b, w)| w * (v[a] / deg[a].sqrt() - v[b] / deg[b].sqrt()).powi(2))
            .sum()
    };
    let value = form(perturbed, &dt) - (1.0 - delta) * form(g, &d);
    Ok(NoGo::Certificate { value, perturbed: perturbed.clone() })
}

/// Perturbs `g` (retrying with successive seeds while the degrees stay proportional) and
/// returns the certificate for the first non-degenerate draw.
pub fn normalized_nogo_witness(g: &Graph, eps: f64, delta: f64, seed: u64) -> Result<NoGo> {
    check_nogo_input(g)?;
    for attempt in 0..100u64 {
        let perturbed = perturb_weights(g, eps, seed.wrapping_add(attempt))?;
        if let cert @ NoGo::Certificate { .. } = nogo_certificate(g, &perturbed, delta)? {
            return Ok(cert);
        }
    }
    Ok(NoGo::Degenerate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::laplacian;

    fn p3() -> Graph {
        Graph::from_edges(3, false, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn identity_and_scaling() {
        let l = laplacian(&p3()).unwrap();
        assert!(sandwich_check(&l, &l, 0.0).holds);
        let bad = sandwich_check(&l, &(&l * 1.2), 0.1);
        assert!(!bad.holds);
        let w = bad.witness.unwrap();
        assert!((&l * &w).norm() > 1e-6);
    }

    #[test]
    fn p3_one_edge_scaled() {
        let g = p3();
        let pert = g.reweighted(|u, v, w| if (u, v) == (0, 1) { 1.1 * w } else { w });
        match nogo_certificate(&g, &pert, 0.5).unwrap() {
            NoGo::Certificate { value, .. } => assert!(value < 0.0),
            NoGo::Degenerate => panic!("expected certificate"),
        }
    }

    #[test]
    fn uniform_scaling_is_degenerate() {
        let g = p3();
        let pert = g.reweighted(|_, _, w| 1.3 * w);
        assert_eq!(nogo_certificate(&g, &pert, 0.5).unwrap(), NoGo::Degenerate);
        assert_eq!(normalized_nogo_witness(&g, 0.0, 0.5, 1).unwrap(), NoGo::Degenerate);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(4, false, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(normalized_nogo_witness(&g, 0.1, 0.5, 0).is_err());
    }

    #[test]
    fn perturbation_keeps_edges() {
        let g = p3();
        let pert = perturb_weights(&g, 0.5, 4).unwrap();
        assert_eq!(pert.edge_count(), 2);
        for (u, v, w) in pert.edges() {
            let w0 = g.weight(u, v).unwrap();
            assert!(w >= 0.5 * w0 && w <= 1.5 * w0);
        }
        assert_eq!(perturb_weights(&g, 0.0, 4).unwrap(), g);
    }
}
