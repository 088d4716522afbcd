//! Laplacians, eigenpairs, k-means, spectral clustering and perturbation checks.

mod cluster;
mod eigen;
mod kmeans;
mod laplacian;
mod perturb;

pub use cluster::{spectral_cluster, spectral_embedding, Mode, Partition};
pub use eigen::{laplacian_eigenpairs, smallest_k_eigenpairs, EigenPairs, DENSE_FALLBACK_LIMIT, DENSE_LIMIT};
pub use kmeans::{canonical_labels, kmeans, kmeans_with, KMeansFit, KMeansOptions};
pub use laplacian::{laplacian, laplacian_pair, normalized_laplacian, quadratic_form, LaplacianKind, LaplacianPair};
pub use perturb::{
    degree_conjugate, nogo_certificate, normalized_nogo_witness, perturb_weights, sandwich_check, NoGo,
    SandwichResult,
};
