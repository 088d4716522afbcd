use nalgebra::DMatrix;
use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansOptions {
    pub restarts: usize,
    pub max_iter: usize,
    /// Stop once no centroid moves farther than this.
    pub tol: f64,
}

impl Default for KMeansOptions {
    fn default() -> Self {
        KMeansOptions { restarts: 10, max_iter: 100, tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    /// Cluster of every row, numbered by first appearance.
    pub labels: Vec<usize>,
    /// Sum of squared distances to the assigned centroid.
    pub inertia: f64,
}

fn sq_dist(points: &DMatrix<f64>, i: usize, center: &[f64]) -> f64 {
    center.iter().enumerate().map(|(j, c)| (points[(i, j)] - c).powi(2)).sum()
}

fn row(points: &DMatrix<f64>, i: usize) -> Vec<f64> {
    points.row(i).iter().copied().collect()
}

/// Greedy k-means++: each new centre is the best of `2 + ln k` candidates drawn with
/// probability proportional to squared distance.
fn seed_centers(points: &DMatrix<f64>, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.nrows();
    let trials = 2 + (k as f64).ln() as usize;
    let mut centers = vec![row(points, rng.random_range(0..n))];
    let mut closest: Vec<f64> = (0..n).map(|i| sq_dist(points, i, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = closest.iter().sum();
        let candidates: Vec<usize> = if total > 0.0 {
            let dist = WeightedIndex::new(&closest).unwrap();
            (0..trials).map(|_| dist.sample(rng)).collect()
        } else {
            vec![rng.random_range(0..n)]
        };
        let mut best: Option<(f64, usize, Vec<f64>)> = None;
        for c in candidates {
            let cand = row(points, c);
            let updated: Vec<f64> = (0..n).map(|i| closest[i].min(sq_dist(points, i, &cand))).collect();
            let pot: f64 = updated.iter().sum();
            if best.as_ref().is_none_or(|b| pot < b.0) {
                best = Some((pot, c, updated));
            }
        }
        let (_, c, updated) = best.unwrap();
        centers.push(row(points, c));
        closest = updated;
    }
    centers
}

fn lloyd(points: &DMatrix<f64>, mut centers: Vec<Vec<f64>>, opts: &KMeansOptions) -> (Vec<usize>, f64) {
    let (n, dim) = points.shape();
    let k = centers.len();
    let mut labels = vec![0; n];
    let mut dist = vec![0.0; n];
    for iter in 0..=opts.max_iter {
        for i in 0..n {
            let (best, d) = centers
                .iter()
                .enumerate()
                .map(|(c, ctr)| (c, sq_dist(points, i, ctr)))
                .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
            labels[i] = best;
            dist[i] = d;
        }
        if iter == opts.max_iter {
            break;
        }
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for i in 0..n {
            counts[labels[i]] += 1;
            for j in 0..dim {
                sums[labels[i]][j] += points[(i, j)];
            }
        }
        let mut taken = vec![false; n];
        let mut shift: f64 = 0.0;
        for c in 0..k {
            let new: Vec<f64> = if counts[c] > 0 {
                sums[c].iter().map(|s| s / counts[c] as f64).collect()
            } else {
                let far = (0..n)
                    .filter(|&i| !taken[i])
                    .max_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(b.cmp(&a)))
                    .unwrap();
                taken[far] = true;
                row(points, far)
            };
            let moved: f64 = new.iter().zip(&centers[c]).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            shift = shift.max(moved);
            centers[c] = new;
        }
        if shift < opts.tol {
            for i in 0..n {
                let (best, d) = centers
                    .iter()
                    .enumerate()
                    .map(|(c, ctr)| (c, sq_dist(points, i, ctr)))
                    .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
                labels[i] = best;
                dist[i] = d;
            }
            break;
        }
    }
    (labels, dist.iter().sum())
}

/// Renumbers clusters in order of first appearance.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

pub fn kmeans_with(points: &DMatrix<f64>, k: usize, seed: u64, opts: &KMeansOptions) -> Result<KMeansFit> {
    let n = points.nrows();
    if k == 0 || k > n {
        return Err(Error::arg(format!("k-means needs 1 <= k <= n, got k={k}, n={n}")));
    }
    let runs: Vec<(Vec<usize>, f64)> = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let centers = seed_centers(points, k, &mut rng);
            lloyd(points, centers, opts)
        })
        .collect();
    let (labels, inertia) = runs
        .into_iter()
        .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
        .unwrap();
    Ok(KMeansFit { labels: canonical_labels(&labels), inertia })
}

pub fn kmeans(points: &DMatrix<f64>, k: usize, seed: u64) -> Result<KMeansFit> {
    kmeans_with(points, k, seed, &KMeansOptions::default())
}
