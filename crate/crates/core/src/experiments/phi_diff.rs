use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::generators::{gen_circles, gen_cluster_graph, gen_lfr_like, CirclesParams, ClusterParams, Generated, LfrParams};
use crate::engine::conductance;
use crate::error::{Error, Result};
use crate::spectral::{perturb_weights, spectral_cluster, Mode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorSpec {
    Cluster(ClusterParams),
    Circles(CirclesParams),
    Lfr(LfrParams),
}

impl GeneratorSpec {
    pub fn n(&self) -> usize {
        match self {
            GeneratorSpec::Cluster(p) => p.n,
            GeneratorSpec::Circles(p) => p.n,
            GeneratorSpec::Lfr(p) => p.n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorSpec::Cluster(_) => "cluster",
            GeneratorSpec::Circles(_) => "circles",
            GeneratorSpec::Lfr(_) => "lfr",
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Generated> {
        match self {
            GeneratorSpec::Cluster(p) => gen_cluster_graph(p, seed),
            GeneratorSpec::Circles(p) => gen_circles(p, seed),
            GeneratorSpec::Lfr(p) => gen_lfr_like(p, seed),
        }
    }

    /// Planted group count for generators where it is fixed in advance.
    fn default_k(&self) -> Option<usize> {
        match self {
            GeneratorSpec::Cluster(p) => Some(p.k),
            GeneratorSpec::Circles(_) => Some(2),
            GeneratorSpec::Lfr(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub generator: GeneratorSpec,
    /// `None` uses the planted group count of each generated graph.
    pub k: Option<usize>,
    pub eps: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Cluster only the largest connected component of each generated graph.
    pub largest_component: bool,
}

impl ExperimentConfig {
    pub fn new(generator: GeneratorSpec, eps: Vec<f64>, trials: usize, seed: u64) -> Self {
        ExperimentConfig { generator, k: None, eps, trials, seed, mode: Mode::Conductance, largest_component: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::arg("need at least one trial"));
        }
        if self.eps.is_empty() {
            return Err(Error::arg("empty epsilon grid"));
        }
        if let Some(e) = self.eps.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return Err(Error::arg(format!("epsilon {e} outside [0, 1]")));
        }
        if matches!(self.k, Some(k) if k < 2) {
            return Err(Error::arg("k must be at least 2"));
        }
        Ok(())
    }

    /// Seed of trial `t`, independent of the rest of the configuration.
    pub fn trial_seed(&self, t: usize) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(t as u64);
        rng.next_u64()
    }

    /// The graph trial `t` clusters, with its planted groups.
    pub fn trial_graph(&self, t: usize) -> Result<Generated> {
        let seeds = TrialSeeds::from(self.trial_seed(t));
        let generated = self.generator.generate(seeds.graph)?;
        if !self.largest_component {
            return Ok(generated);
        }
        let comps = generated.graph.components();
        let keep = comps.iter().max_by_key(|c| (c.len(), std::cmp::Reverse(c[0]))).cloned().unwrap_or_default();
        if keep.len() == generated.graph.n() {
            return Ok(generated);
        }
        let truth = crate::spectral::canonical_labels(&keep.iter().map(|&v| generated.truth[v]).collect::<Vec<_>>());
        Ok(Generated { graph: generated.graph.induced(&keep), truth })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiDiffRecord {
    pub trial: usize,
    pub trial_seed: u64,
    /// Requested graph size; the clustered graph may be smaller.
    pub n: usize,
    pub vertices: usize,
    pub eps: f64,
    pub phi_original: f64,
    /// Conductance on the original graph of the partition found on the perturbed graph.
    pub phi_perturbed: f64,
    pub phi_diff: f64,
    pub original_labels: Vec<usize>,
    pub perturbed_labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiDiffSummary {
    pub n: usize,
    pub eps: f64,
    pub trials: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiDiffOutcome {
    pub records: Vec<PhiDiffRecord>,
    pub summary: Vec<PhiDiffSummary>,
}

struct TrialSeeds {
    graph: u64,
    kmeans: u64,
    perturb: u64,
}

impl TrialSeeds {
    fn from(trial_seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        TrialSeeds { graph: rng.next_u64(), kmeans: rng.next_u64(), perturb: rng.next_u64() }
    }
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<PhiDiffRecord>> {
    let trial_seed = cfg.trial_seed(trial);
    let seeds = TrialSeeds::from(trial_seed);
    let with_seed = |e: Error| Error::arg(format!("trial {trial} (seed {trial_seed}): {e}"));
    let generated = cfg.trial_graph(trial).map_err(with_seed)?;
    let g = &generated.graph;
    let k = cfg.k.or(cfg.generator.default_k()).unwrap_or_else(|| generated.groups().max(2));
    let original = spectral_cluster(g, k, cfg.mode, seeds.kmeans).map_err(with_seed)?;
    let phi_original = conductance(g, original.labels());
    cfg.eps
        .iter()
        .enumerate()
        .map(|(i, &eps)| {
            let perturbed = perturb_weights(g, eps, seeds.perturb.wrapping_add(i as u64))?;
            let part = spectral_cluster(&perturbed, k, cfg.mode, seeds.kmeans).map_err(with_seed)?;
            let phi_perturbed = conductance(g, part.labels());
            Ok(PhiDiffRecord {
                trial,
                trial_seed,
                n: cfg.generator.n(),
                vertices: g.n(),
                eps,
                phi_original,
                phi_perturbed,
                phi_diff: phi_perturbed - phi_original,
                original_labels: original.labels().to_vec(),
                perturbed_labels: part.labels().to_vec(),
            })
        })
        .collect()
}

pub fn summarize(records: &[PhiDiffRecord]) -> Vec<PhiDiffSummary> {
    let mut groups: BTreeMap<(usize, u64), Vec<f64>> = BTreeMap::new();
    for r in records {
        groups.entry((r.n, r.eps.to_bits())).or_default().push(r.phi_diff);
    }
    let mut out: Vec<PhiDiffSummary> = groups
        .into_iter()
        .map(|((n, eps), xs)| {
            let m = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / m;
            let std = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / m).sqrt();
            PhiDiffSummary { n, eps: f64::from_bits(eps), trials: xs.len(), mean, std }
        })
        .collect();
    out.sort_by(|a, b| a.n.cmp(&b.n).then(a.eps.total_cmp(&b.eps)));
    out
}

/// Runs every trial in parallel; records come back ordered by trial, then by epsilon.
pub fn phi_diff_experiment(cfg: &ExperimentConfig) -> Result<PhiDiffOutcome> {
    cfg.validate()?;
    let per_trial: Vec<Vec<PhiDiffRecord>> =
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect::<Result<_>>()?;
    let records: Vec<PhiDiffRecord> = per_trial.into_iter().flatten().collect();
    let summary = summarize(&records);
    Ok(PhiDiffOutcome { records, summary })
}

pub fn records_csv(records: &[PhiDiffRecord]) -> String {
    let mut out = String::from("trial,trial_seed,n,vertices,eps,phi_original,phi_perturbed,phi_diff\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.trial, r.trial_seed, r.n, r.vertices, r.eps, r.phi_original, r.phi_perturbed, r.phi_diff
        )
        .unwrap();
    }
    out
}

pub fn summary_csv(summary: &[PhiDiffSummary]) -> String {
    let mut out = String::from("n,eps,trials,mean_phi_diff,std_phi_diff\n");
    for s in summary {
        writeln!(out, "{},{},{},{},{}", s.n, s.eps, s.trials, s.mean, s.std).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        let p = ClusterParams { n: 120, k: 3, ..Default::default() };
        ExperimentConfig::new(GeneratorSpec::Cluster(p), vec![0.0, 0.2], 4, 11)
    }

    #[test]
    fn zero_eps_gives_zero_difference() {
        let out = phi_diff_experiment(&small()).unwrap();
        assert_eq!(out.records.len(), 8);
        for r in out.records.iter().filter(|r| r.eps == 0.0) {
            assert_eq!(r.phi_diff, 0.0);
            assert_eq!(r.original_labels, r.perturbed_labels);
        }
        assert!(out.records.windows(2).all(|w| w[0].trial <= w[1].trial));
    }

    #[test]
    fn records_reproduce_from_labels() {
        let cfg = small();
        let out = phi_diff_experiment(&cfg).unwrap();
        for r in &out.records {
            let g = cfg.trial_graph(r.trial).unwrap().graph;
            assert!(g.is_connected());
            assert_eq!(conductance(&g, &r.original_labels), r.phi_original);
            assert_eq!(conductance(&g, &r.perturbed_labels), r.phi_perturbed);
            assert!(r.phi_original >= 0.0 && r.phi_perturbed >= 0.0);
        }
    }

    #[test]
    fn summary_statistics() {
        let mk = |d: f64| PhiDiffRecord {
            trial: 0,
            trial_seed: 0,
            n: 10,
            vertices: 10,
            eps: 0.1,
            phi_original: 0.0,
            phi_perturbed: d,
            phi_diff: d,
            original_labels: vec![],
            perturbed_labels: vec![],
        };
        let s = summarize(&[mk(1.0), mk(3.0)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].mean, 2.0);
        assert_eq!(s[0].std, 1.0);
        assert!(summary_csv(&s).lines().nth(1).unwrap().starts_with("10,0.1,2,2,1"));
    }

    #[test]
    fn invalid_configs() {
        let mut c = small();
        c.trials = 0;
        assert!(phi_diff_experiment(&c).is_err());
        let mut c = small();
        c.eps = vec![1.5];
        assert!(phi_diff_experiment(&c).is_err());
    }
}
