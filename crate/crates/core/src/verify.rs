//! Randomised property suites over the library's core identities.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{
    brute_force_instances, build_motif_graph_approx, build_motif_graph_exact, build_motif_graph_multi, cut_weight,
    enumerate_instances, enumerate_walks, motif_cut, motif_volume, volume,
};
use crate::error::Result;
use crate::experiments::gen_gnp;
use crate::graph::Graph;
use crate::motif::{symmetry_profile, two_anchor_decomposition, Motif};
use crate::quantum::{powerlaw_exponents, tau0, tau1, Algorithm, ExactCounter, NoisyCounter};
use crate::spectral::{laplacian, normalized_nogo_witness, perturb_weights, quadratic_form, sandwich_check, NoGo};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases) {}", self.name, self.cases, self.detail)
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            detail: self.failure.unwrap_or_default(),
        }
    }
}

fn corpus(graphs: usize, seed: u64) -> Result<Vec<Graph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..graphs)
        .map(|i| {
            let n = rng.random_range(5..=10);
            let p = if i % 2 == 0 { 0.3 } else { 0.6 };
            gen_gnp(n, p, i % 4 == 3, rng.random())
        })
        .collect()
}

fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.random_bool(0.5)).collect()
}

fn motifs(names: &[&str]) -> Vec<Motif> {
    names.iter().map(|n| Motif::builtin(n).expect("builtin motif")).collect()
}

fn enumeration_matches_brute_force(graphs: &[Graph]) -> Result<CheckOutcome> {
    let mut t = Tally::new("enumeration-vs-brute-force");
    for g in graphs {
        for m in motifs(&["triangle2", "triangle3", "clique4a2", "path2"]) {
            let fast = enumerate_instances(&m, g);
            let slow = brute_force_instances(&m, g)?;
            t.check(fast == slow, || format!("{} instances vs {} on n={}", fast.len(), slow.len(), g.n()));
        }
    }
    Ok(t.finish())
}

fn symmetry_factor(graphs: &[Graph]) -> Result<CheckOutcome> {
    let mut t = Tally::new("assignments-over-symmetry");
    for g in graphs {
        for m in motifs(&["triangle2", "triangle3", "clique4a2", "path2", "path3"]) {
            let sym = symmetry_profile(&m)?.automorphisms;
            let walks = enumerate_walks(&m, g);
            t.check(walks.assignments == sym * walks.instances.len(), || {
                format!("{} assignments, {} instances, factor {sym}", walks.assignments, walks.instances.len())
            });
        }
    }
    Ok(t.finish())
}

fn cut_and_volume_identities(graphs: &[Graph], subsets: usize, seed: u64) -> CheckOutcome {
    let mut t = Tally::new("motif-cut-and-volume");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in graphs.iter().filter(|g| !g.is_directed()) {
        for m in motifs(&["triangle2", "path2", "triangle3", "clique4a3"]) {
            let instances = enumerate_instances(&m, g);
            let mg = build_motif_graph_exact(&m, g);
            let anchors = m.anchors().len();
            for _ in 0..subsets {
                let inside = random_subset(&mut rng, g.n());
                let vol = motif_volume(&instances, &inside) * (anchors - 1);
                let vol_g = volume(mg.graph(), &inside);
                t.check(vol as f64 == vol_g, || format!("volume {vol} vs {vol_g}"));
                let cut = motif_cut(&instances, &inside) as f64;
                let cut_g = cut_weight(mg.graph(), &inside);
                let scaled = if anchors == 2 { cut_g } else { cut_g / 2.0 };
                t.check(cut == scaled, || format!("cut {cut} vs {scaled} with {anchors} anchors"));
                if anchors == 2 {
                    let x: Vec<f64> = inside.iter().map(|&b| if b { 1.0 } else { -1.0 }).collect();
                    let q = quadratic_form(mg.graph(), &x) / 4.0;
                    t.check(cut == q, || format!("cut {cut} vs quadratic form {q}"));
                }
            }
        }
    }
    t.finish()
}

fn decomposition_residual(graphs: &[Graph]) -> Result<CheckOutcome> {
    let mut t = Tally::new("two-anchor-decomposition");
    for g in graphs.iter().filter(|g| !g.is_directed()) {
        for m in motifs(&["triangle3", "path2", "clique4a3", "clique4a4"]) {
            let Ok(dec) = two_anchor_decomposition(&m) else { continue };
            let parts: Vec<(f64, Motif)> = dec.parts.iter().map(|p| (p.weight as f64, p.motif.clone())).collect();
            let direct = build_motif_graph_exact(&m, g);
            let summed = build_motif_graph_multi(&parts, g)?;
            t.check(direct.graph().edges().eq(summed.graph().edges()), || format!("residual on n={}", g.n()));
        }
    }
    Ok(t.finish())
}

fn sandwich(cases: usize, seed: u64) -> Result<CheckOutcome> {
    let mut t = Tally::new("laplacian-sandwich");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let g = gen_gnp(rng.random_range(5..=30), 0.3, false, rng.random())?
            .reweighted(|_, _, _| rng.random_range(0.5..2.0));
        let l = laplacian(&g)?;
        for eps in [0.05, 0.1, 0.3] {
            let lt = laplacian(&perturb_weights(&g, eps, rng.random())?)?;
            let r = sandwich_check(&l, &lt, eps);
            t.check(r.holds, || format!("eps={eps} margins {} {}", r.lower_margin, r.upper_margin));
            if g.edge_count() > 0 {
                let scaled = &l * (1.0 + 2.0 * eps);
                t.check(!sandwich_check(&l, &scaled, eps).holds, || format!("scaling by 1+2eps passed at eps={eps}"));
            }
        }
    }
    Ok(t.finish())
}

fn nogo(cases: usize, seed: u64) -> Result<CheckOutcome> {
    let mut t = Tally::new("normalized-no-go");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut negative = 0;
    let mut tried = 0;
    while tried < cases {
        let g = gen_gnp(rng.random_range(6..=20), 0.5, false, rng.random())?;
        if !g.is_connected() {
            continue;
        }
        tried += 1;
        if let NoGo::Certificate { value, .. } = normalized_nogo_witness(&g, 0.5, 0.5, rng.random())? {
            negative += usize::from(value < -1e-12);
        }
    }
    t.cases = tried;
    if negative * 100 < tried * 99 {
        t.failure = Some(format!("only {negative} of {tried} certificates negative"));
    }
    Ok(t.finish())
}

fn counter_band(draws: usize, seed: u64) -> CheckOutcome {
    let mut t = Tally::new("noisy-counter-band");
    let counter = NoisyCounter::new(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..draws {
        let truth: u64 = rng.random_range(0..1000);
        let eps = rng.random_range(0.01..0.5);
        let est = counter.noisy_count(truth, eps, 0.01, 100.0, (i, i + 1));
        let ok = if truth == 0 { est == 0.0 } else { (est - truth as f64).abs() <= eps * truth as f64 };
        t.check(ok, || format!("t={truth} estimate {est} eps={eps}"));
    }
    t.finish()
}

fn approx_with_exact_counter(graphs: &[Graph]) -> Result<CheckOutcome> {
    let mut t = Tally::new("approx-with-exact-counter");
    for g in graphs {
        for m in motifs(&["triangle2", "path2", "clique4a2"]) {
            let approx = build_motif_graph_approx(&m, g, 0.1, 0.1, &ExactCounter)?;
            let exact = build_motif_graph_exact(&m, g);
            t.check(approx.graph().edges().eq(exact.graph().edges()), || format!("mismatch on n={}", g.n()));
        }
    }
    Ok(t.finish())
}

fn crossovers() -> CheckOutcome {
    let mut t = Tally::new("power-law-crossovers");
    let exponent = |s: u32, tau: f64, alg: Algorithm| {
        powerlaw_exponents(s, tau).iter().find(|(a, _)| *a == alg).map(|(_, e)| *e).unwrap()
    };
    for s in 3..=8 {
        let tau = tau0(s);
        if tau > 2.0 && tau < 3.0 {
            let inv = 1.0 / (tau - 1.0);
            let grover = exponent(s, tau, Algorithm::Grover);
            let quantum_cluster = exponent(s, tau, Algorithm::ApproxQuantumCluster);
            t.check((quantum_cluster - (grover - inv / 2.0)).abs() < 1e-9, || format!("s={s} at tau0={tau}"));
        }
    }
    let (presorted, plain) = (exponent(3, tau1(), Algorithm::GroverPresorted), exponent(3, tau1(), Algorithm::Grover));
    t.check((presorted - plain).abs() < 1e-9, || format!("triangle exponents {presorted} and {plain} differ at tau1"));
    t.finish()
}

/// Runs every suite; `quick` shrinks the sample sizes for interactive use.
pub fn run_verification(seed: u64, quick: bool) -> Result<Vec<CheckOutcome>> {
    let graphs = corpus(if quick { 12 } else { 50 }, seed)?;
    let scale = if quick { 1 } else { 4 };
    Ok(vec![
        enumeration_matches_brute_force(&graphs)?,
        symmetry_factor(&graphs)?,
        cut_and_volume_identities(&graphs, 25 * scale, seed ^ 1),
        decomposition_residual(&graphs)?,
        sandwich(25 * scale, seed ^ 2)?,
        nogo(25 * scale, seed ^ 3)?,
        counter_band(25_000 * scale, seed ^ 4),
        approx_with_exact_counter(&graphs)?,
        crossovers(),
    ])
}
