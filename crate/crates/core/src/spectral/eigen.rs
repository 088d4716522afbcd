use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::laplacian::{laplacian, normalized_laplacian, require_undirected, LaplacianKind, LaplacianOp};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Graphs up to this size are diagonalised densely.
pub const DENSE_LIMIT: usize = 300;
/// Largest size for which a dense solve is attempted when the iterative solver stalls.
pub const DENSE_FALLBACK_LIMIT: usize = 4000;

const MAX_RESTARTS: usize = 200;
const RESIDUAL_TARGET: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs {
    /// Ascending.
    pub values: Vec<f64>,
    /// One column per value, orthonormal.
    pub vectors: DMatrix<f64>,
}

fn fix_signs(vectors: &mut DMatrix<f64>) {
    for mut col in vectors.column_iter_mut() {
        let mut best = 0;
        for i in 0..col.len() {
            if col[i].abs() > col[best].abs() {
                best = i;
            }
        }
        if !col.is_empty() && col[best] < 0.0 {
            col.neg_mut();
        }
    }
}

/// Dense symmetric eigendecomposition, keeping the `k` smallest pairs ordered by (value, index).
pub fn smallest_k_eigenpairs(mat: &DMatrix<f64>, k: usize) -> Result<EigenPairs> {
    let n = mat.nrows();
    if mat.ncols() != n {
        return Err(Error::arg("matrix is not square"));
    }
    if k > n {
        return Err(Error::arg(format!("asked for {k} eigenpairs of a {n}x{n} matrix")));
    }
    let scale = mat.amax().max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            if (mat[(i, j)] - mat[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::arg(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    let eig = SymmetricEigen::new(mat.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    order.truncate(k);
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::from_fn(n, k, |r, c| eig.eigenvectors[(r, order[c])]);
    fix_signs(&mut vectors);
    Ok(EigenPairs { values, vectors })
}

/// The `k` smallest eigenpairs of a graph Laplacian; dense for small graphs, restarted
/// block Krylov otherwise.
pub fn laplacian_eigenpairs(g: &Graph, k: usize, kind: LaplacianKind) -> Result<EigenPairs> {
    require_undirected(g)?;
    let n = g.n();
    if k > n {
        return Err(Error::arg(format!("asked for {k} eigenpairs of an {n}-vertex graph")));
    }
    if n <= DENSE_LIMIT {
        return dense_laplacian_eigenpairs(g, k, kind);
    }
    match block_krylov(&LaplacianOp::new(g, kind), n, k) {
        Ok(p) => Ok(p),
        Err(Error::NoConvergence(_)) if n <= DENSE_FALLBACK_LIMIT => dense_laplacian_eigenpairs(g, k, kind),
        Err(e) => Err(e),
    }
}

fn dense_laplacian_eigenpairs(g: &Graph, k: usize, kind: LaplacianKind) -> Result<EigenPairs> {
    let mat = match kind {
        LaplacianKind::Combinatorial => laplacian(g)?,
        LaplacianKind::Normalized => normalized_laplacian(g)?
            .ok_or_else(|| Error::arg("normalized Laplacian needs every degree positive"))?,
    };
    smallest_k_eigenpairs(&mat, k)
}

/// Orthogonalises the columns of `block` against `basis[.., ..used]` (two block passes)
/// and then against each other, dropping columns that collapse. Accepted columns are
/// written into `basis` starting at `used`; returns the new column count.
fn extend_basis(basis: &mut DMatrix<f64>, used: usize, block: &DMatrix<f64>) -> usize {
    let norms0: Vec<f64> = block.column_iter().map(|c| c.norm()).collect();
    let mut w = block.clone();
    if used > 0 {
        let qb = basis.columns(0, used);
        for _ in 0..2 {
            let h = qb.transpose() * &w;
            w -= qb * h;
        }
    }
    let mut q = used;
    for c in 0..w.ncols() {
        if q == basis.ncols() {
            break;
        }
        if norms0[c] == 0.0 {
            continue;
        }
        let mut v: DVector<f64> = w.column(c).into_owned();
        for _ in 0..2 {
            for j in used..q {
                let bj = basis.column(j);
                let h = bj.dot(&v);
                v.axpy(-h, &bj, 1.0);
            }
        }
        let norm = v.norm();
        if norm <= 1e-10 * norms0[c] {
            continue;
        }
        basis.set_column(q, &(v / norm));
        q += 1;
    }
    q
}

fn block_krylov(op: &LaplacianOp<'_>, n: usize, k: usize) -> Result<EigenPairs> {
    if k == 0 {
        return Ok(EigenPairs { values: Vec::new(), vectors: DMatrix::zeros(n, 0) });
    }
    let shift = op.upper_bound().max(f64::MIN_POSITIVE);
    let tol = RESIDUAL_TARGET * shift;
    let width = (k + 6).min(n);
    let capacity = (10 * width).max(150).min(n);

    let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_796c_6f76 ^ n as u64);
    let mut x = DMatrix::from_fn(n, width, |_, _| StandardNormal.sample(&mut rng));

    let mut worst = f64::INFINITY;
    for _ in 0..MAX_RESTARTS {
        let mut basis = DMatrix::zeros(n, capacity);
        let mut used = 0;
        let mut block = x.clone();
        loop {
            let start = used;
            used = extend_basis(&mut basis, used, &block);
            if used == start || used == capacity {
                break;
            }
            let fresh = basis.columns(start, used - start).into_owned();
            block = &fresh * shift - op.apply(&fresh);
        }
        let q = basis.columns(0, used).into_owned();
        let lq = op.apply(&q);
        let mut t = q.transpose() * &lq;
        t = (&t + t.transpose()) * 0.5;
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..used).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
        let keep = width.min(used);
        let y = DMatrix::from_fn(used, keep, |r, c| eig.eigenvectors[(r, order[c])]);
        let ritz = &q * &y;
        let lritz = &lq * &y;

        worst = 0.0;
        for c in 0..k.min(keep) {
            let lambda = eig.eigenvalues[order[c]];
            let res = (lritz.column(c) - ritz.column(c) * lambda).norm();
            worst = worst.max(res);
        }
        if keep >= k && worst <= tol {
            let values = (0..k).map(|c| eig.eigenvalues[order[c]]).collect();
            let mut vectors = ritz.columns(0, k).into_owned();
            fix_signs(&mut vectors);
            return Ok(EigenPairs { values, vectors });
        }
        x = ritz;
        if x.ncols() < width {
            let extra = DMatrix::from_fn(n, width - x.ncols(), |_, _| StandardNormal.sample(&mut rng));
            x = DMatrix::from_fn(n, width, |r, c| if c < keep { x[(r, c)] } else { extra[(r, c - keep)] });
        }
    }
    Err(Error::NoConvergence(format!("largest residual {worst:e} above {tol:e} after {MAX_RESTARTS} restarts")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, false, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn k3_spectrum() {
        let p = smallest_k_eigenpairs(&laplacian(&k3()).unwrap(), 3).unwrap();
        for (got, want) in p.values.iter().zip([0.0, 3.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let ones = p.vectors.column(0);
        assert!(ones.iter().all(|&x| (x - 1.0 / 3f64.sqrt()).abs() < 1e-12));
    }

    #[test]
    fn asymmetric_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(smallest_k_eigenpairs(&m, 1).is_err());
        assert!(smallest_k_eigenpairs(&m, 3).is_err());
    }

    #[test]
    fn krylov_matches_dense_on_a_ring_of_cliques() {
        let mut edges = Vec::new();
        let (blocks, size) = (8, 60);
        for b in 0..blocks {
            let base = b * size;
            for i in 0..size {
                for j in i + 1..size {
                    if (i * 7 + j * 3) % 4 != 0 {
                        edges.push((base + i, base + j, 1.0 + ((i + j) % 3) as f64));
                    }
                }
            }
            edges.push((base, ((b + 1) % blocks) * size + 1, 0.5));
        }
        let g = Graph::from_edges(blocks * size, false, edges).unwrap();
        for kind in [LaplacianKind::Combinatorial, LaplacianKind::Normalized] {
            let op = LaplacianOp::new(&g, kind);
            let sparse = block_krylov(&op, g.n(), 8).unwrap();
            let dense = dense_laplacian_eigenpairs(&g, 9, kind).unwrap();
            for i in 0..8 {
                assert!((sparse.values[i] - dense.values[i]).abs() < 1e-8, "{kind:?} {i}");
            }
            let overlap = dense.vectors.columns(0, 8).transpose() * &sparse.vectors;
            let sv = overlap.singular_values();
            assert!(sv.iter().all(|&s| s > 1.0 - 1e-6), "{kind:?} {sv}");
        }
    }
}
