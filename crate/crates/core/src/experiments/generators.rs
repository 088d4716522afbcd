use std::collections::HashSet;
use std::f64::consts::PI;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A generated graph with the planted group of every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Graph,
    pub truth: Vec<usize>,
}

impl Generated {
    pub fn groups(&self) -> usize {
        self.truth.iter().copied().max().map_or(0, |m| m + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterParams {
    pub n: usize,
    pub k: usize,
    /// Standard deviation of points around their centre; centres sit on the unit circle.
    pub spread: f64,
    pub radius: f64,
    pub weight_scale: f64,
}

impl Default for ClusterParams {
    fn default() -> Self {
        ClusterParams { n: 1000, k: 5, spread: 0.3, radius: 0.25, weight_scale: 1.0 }
    }
}

fn geometric_graph(points: &[(f64, f64)], radius: f64, weight_scale: f64) -> Graph {
    let n = points.len();
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (dx, dy) = (points[u].0 - points[v].0, points[u].1 - points[v].1);
            let d2 = dx * dx + dy * dy;
            if d2 <= r2 {
                edges.push((u, v, weight_scale / d2.sqrt()));
            }
        }
    }
    Graph::from_edges(n, false, edges).expect("generated edges are valid")
}

/// Re-draws any point that coincides exactly with an earlier one.
fn distinct_points<F>(n: usize, rng: &mut ChaCha8Rng, mut draw: F) -> Vec<(f64, f64)>
where
    F: FnMut(usize, &mut ChaCha8Rng) -> (f64, f64),
{
    let mut seen = HashSet::new();
    (0..n)
        .map(|i| loop {
            let p = draw(i, rng);
            if seen.insert((p.0.to_bits(), p.1.to_bits())) {
                break p;
            }
        })
        .collect()
}

/// Gaussian blobs around `k` centres evenly spaced on the unit circle, joined within
/// `radius` with weight `weight_scale / distance`. Point `i` belongs to centre `i % k`.
pub fn gen_cluster_graph(p: &ClusterParams, seed: u64) -> Result<Generated> {
    if p.n == 0 || p.k == 0 || !(p.spread > 0.0) || !(p.radius > 0.0) || !(p.weight_scale > 0.0) {
        return Err(Error::arg("cluster graph parameters must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, p.spread).unwrap();
    let centres: Vec<(f64, f64)> =
        (0..p.k).map(|c| 2.0 * PI * c as f64 / p.k as f64).map(|a| (a.cos(), a.sin())).collect();
    let points = distinct_points(p.n, &mut rng, |i, rng| {
        let (cx, cy) = centres[i % p.k];
        (cx + normal.sample(rng), cy + normal.sample(rng))
    });
    let truth = (0..p.n).map(|i| i % p.k).collect();
    Ok(Generated { graph: geometric_graph(&points, p.radius, p.weight_scale), truth })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclesParams {
    pub n: usize,
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub noise: f64,
    pub threshold: f64,
    pub weight_scale: f64,
}

impl Default for CirclesParams {
    fn default() -> Self {
        CirclesParams { n: 1000, outer_radius: 1.0, inner_radius: 0.5, noise: 0.05, threshold: 0.6, weight_scale: 20.0 }
    }
}

/// Two noisy concentric circles (first half outer, second half inner), standardised per
/// coordinate, joined within `threshold` with weight `weight_scale / distance`.
pub fn gen_circles(p: &CirclesParams, seed: u64) -> Result<Generated> {
    if p.n < 2 || p.noise < 0.0 || p.threshold < 0.0 || !(p.weight_scale > 0.0) {
        return Err(Error::arg("invalid circle parameters"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_outer = p.n / 2;
    let n_inner = p.n - n_outer;
    let normal = Normal::new(0.0, p.noise.max(f64::MIN_POSITIVE)).unwrap();
    let mut points = distinct_points(p.n, &mut rng, |i, rng| {
        let (r, j, m) = if i < n_outer { (p.outer_radius, i, n_outer) } else { (p.inner_radius, i - n_outer, n_inner) };
        let a = 2.0 * PI * j as f64 / m as f64;
        let jitter = |rng: &mut ChaCha8Rng| if p.noise > 0.0 { normal.sample(rng) } else { 0.0 };
        (r * a.cos() + jitter(rng), r * a.sin() + jitter(rng))
    });
    for axis in 0..2 {
        let get = |q: &(f64, f64)| if axis == 0 { q.0 } else { q.1 };
        let mean = points.iter().map(get).sum::<f64>() / p.n as f64;
        let var = points.iter().map(|q| (get(q) - mean).powi(2)).sum::<f64>() / p.n as f64;
        let sd = var.sqrt().max(f64::MIN_POSITIVE);
        for q in &mut points {
            let x = (get(q) - mean) / sd;
            if axis == 0 {
                q.0 = x;
            } else {
                q.1 = x;
            }
        }
    }
    let truth = (0..p.n).map(|i| usize::from(i >= n_outer)).collect();
    Ok(Generated { graph: geometric_graph(&points, p.threshold, p.weight_scale), truth })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LfrParams {
    pub n: usize,
    pub tau_degree: f64,
    pub tau_community: f64,
    /// Fraction of each vertex's edge stubs wired uniformly across the whole graph.
    pub mixing: f64,
    pub avg_degree: f64,
    pub min_community: usize,
    pub max_community: usize,
}

impl Default for LfrParams {
    fn default() -> Self {
        LfrParams {
            n: 2000,
            tau_degree: 2.5,
            tau_community: 1.5,
            mixing: 0.2,
            avg_degree: 15.0,
            min_community: 50,
            max_community: 400,
        }
    }
}

/// Inverse-CDF draw from a continuous power law with density `∝ x^{-tau}` on `[lo, hi]`.
fn power_law_draw(rng: &mut impl Rng, tau: f64, lo: f64, hi: f64) -> f64 {
    let u: f64 = rng.random();
    let a = 1.0 - tau;
    if a.abs() < 1e-12 {
        return lo * (hi / lo).powf(u);
    }
    (lo.powf(a) + u * (hi.powf(a) - lo.powf(a))).powf(1.0 / a)
}

fn power_law_mean(tau: f64, lo: f64, hi: f64) -> f64 {
    let moment = |p: f64| {
        if p.abs() < 1e-12 {
            (hi / lo).ln()
        } else {
            (hi.powf(p) - lo.powf(p)) / p
        }
    };
    moment(2.0 - tau) / moment(1.0 - tau)
}

/// Simplified LFR-style benchmark: power-law degrees and community sizes, a `1 - mixing`
/// share of every vertex's stubs paired inside its community and the rest paired
/// uniformly. Self-loops and repeated pairs are discarded.
pub fn gen_lfr_like(p: &LfrParams, seed: u64) -> Result<Generated> {
    if !(p.tau_degree > 1.0) || !(p.tau_community > 1.0) || !(0.0..=1.0).contains(&p.mixing) {
        return Err(Error::arg("LFR parameters need tau > 1 and mixing in [0, 1]"));
    }
    if p.min_community < 2 || p.min_community > p.max_community || p.max_community > p.n {
        return Err(Error::arg("community size bounds must satisfy 2 <= min <= max <= n"));
    }
    let n = p.n;
    let kmax = (n as f64).powf(1.0 / (p.tau_degree - 1.0)).min((p.max_community - 1) as f64).max(2.0);
    if !(p.avg_degree > 1.0) || p.avg_degree >= kmax {
        return Err(Error::arg(format!("average degree must lie in (1, {kmax})")));
    }
    let (mut lo, mut hi) = (1.0, kmax);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if power_law_mean(p.tau_degree, mid, kmax) < p.avg_degree {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let kmin = 0.5 * (lo + hi);

    for attempt in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        if let Some(g) = lfr_attempt(p, kmin, kmax, &mut rng) {
            return Ok(g);
        }
    }
    Err(Error::arg(format!("could not realise an LFR-like graph from seed {seed}")))
}

fn lfr_attempt(p: &LfrParams, kmin: f64, kmax: f64, rng: &mut ChaCha8Rng) -> Option<Generated> {
    let n = p.n;
    let degrees: Vec<usize> = (0..n).map(|_| power_law_draw(rng, p.tau_degree, kmin, kmax).round() as usize).collect();

    let mut sizes = Vec::new();
    let mut total = 0;
    while total < n {
        let s = power_law_draw(rng, p.tau_community, p.min_community as f64, p.max_community as f64).round() as usize;
        sizes.push(s);
        total += s;
    }
    let excess = total - n;
    let last = sizes.last_mut().unwrap();
    if *last >= excess + p.min_community {
        *last -= excess;
    } else {
        sizes.pop();
        let short = n - sizes.iter().sum::<usize>();
        let m = sizes.len();
        if m == 0 {
            return None;
        }
        for i in 0..short {
            sizes[i % m] += 1;
        }
    }

    let internal: Vec<usize> = degrees.iter().map(|&k| ((1.0 - p.mixing) * k as f64).round() as usize).collect();
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    order.sort_by(|&a, &b| internal[b].cmp(&internal[a]));
    let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); sizes.len()];
    let mut truth = vec![0; n];
    for v in order {
        let open: Vec<usize> = (0..sizes.len()).filter(|&c| members[c].len() < sizes[c] && sizes[c] > internal[v]).collect();
        let open = if open.is_empty() { (0..sizes.len()).filter(|&c| members[c].len() < sizes[c]).collect() } else { open };
        let &c = open.as_slice().choose(rng)?;
        members[c].push(v);
        truth[v] = c;
    }

    let mut edges: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut pair_up = |stubs: &mut Vec<VertexId>, rng: &mut ChaCha8Rng| {
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u != v {
                edges.insert((u, v));
            }
        }
    };
    let mut external = Vec::new();
    for group in &members {
        let mut stubs = Vec::new();
        for &v in group {
            let kin = internal[v].min(group.len() - 1);
            stubs.extend(std::iter::repeat_n(v, kin));
            external.extend(std::iter::repeat_n(v, degrees[v] - kin.min(degrees[v])));
        }
        pair_up(&mut stubs, rng);
    }
    pair_up(&mut external, rng);

    let mut edges: Vec<(VertexId, VertexId)> = edges.into_iter().collect();
    edges.sort_unstable();
    let graph = Graph::from_edges(n, false, edges.into_iter().map(|(u, v)| (u, v, 1.0))).ok()?;
    Some(Generated { graph, truth: crate::spectral::canonical_labels(&truth) })
}

/// Hidden-variable power-law graph: Pareto(`tau`) vertex weights `h ≥ 1` capped at
/// `n^{1/(tau-1)}`, edge `uv` present with probability `min(1, h_u h_v / (n⟨h⟩))`.
pub fn gen_powerlaw_hidden_variable(n: usize, tau: f64, seed: u64) -> Result<Graph> {
    if !(tau > 2.0 && tau < 3.0) {
        return Err(Error::arg(format!("tau must lie strictly between 2 and 3, got {tau}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = (n as f64).powf(1.0 / (tau - 1.0));
    let h: Vec<f64> = (0..n).map(|_| power_law_draw(&mut rng, tau, 1.0, f64::INFINITY).min(cap)).collect();
    let total: f64 = h.iter().sum();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let prob = (h[u] * h[v] / total).min(1.0);
            if rng.random::<f64>() < prob {
                edges.push((u, v, 1.0));
            }
        }
    }
    Ok(Graph::from_edges(n, false, edges).expect("generated edges are valid"))
}

/// Erdős–Rényi graph with unit weights; each ordered pair is an independent arc when `directed`.
pub fn gen_gnp(n: usize, p: f64, directed: bool, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.random::<f64>() < p {
                edges.push((u, v, 1.0));
            }
        }
    }
    Graph::from_edges(n, directed, edges)
}

/// Maximum-likelihood exponent of a discrete power law above `kmin`.
pub fn power_law_exponent_mle(values: &[usize], kmin: usize) -> f64 {
    let tail: Vec<f64> = values.iter().filter(|&&x| x >= kmin).map(|&x| x as f64).collect();
    let denom: f64 = tail.iter().map(|x| (x / (kmin as f64 - 0.5)).ln()).sum();
    1.0 + tail.len() as f64 / denom
}
