//! Dominant-term run-time models with unit constants. Values are orders of magnitude,
//! not gate or query counts.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// Searching `n_items` for one of `marked` items.
pub fn grover_cost(n_items: f64, marked: f64) -> f64 {
    if marked > 0.0 {
        (n_items / marked).sqrt()
    } else {
        n_items.sqrt()
    }
}

/// Finding all `marked` items.
pub fn find_all_cost(n_items: f64, marked: f64) -> f64 {
    if marked > 0.0 {
        (n_items * marked).sqrt()
    } else {
        n_items.sqrt()
    }
}

/// Estimating `marked` to relative error `eps` with failure probability `delta`.
pub fn approx_count_cost(n_items: f64, marked: f64, eps: f64, delta: f64) -> f64 {
    if marked > 0.0 {
        (n_items / marked).sqrt() / eps * (1.0 / delta).ln()
    } else {
        n_items.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Classical,
    GroverPresorted,
    Grover,
    ApproxClassicalCluster,
    ApproxQuantumCluster,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Classical,
        Algorithm::GroverPresorted,
        Algorithm::Grover,
        Algorithm::ApproxClassicalCluster,
        Algorithm::ApproxQuantumCluster,
    ];

    pub const QUANTUM: [Algorithm; 4] = [
        Algorithm::GroverPresorted,
        Algorithm::Grover,
        Algorithm::ApproxClassicalCluster,
        Algorithm::ApproxQuantumCluster,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Classical => "classical",
            Algorithm::GroverPresorted => "grover-presorted",
            Algorithm::Grover => "grover",
            Algorithm::ApproxClassicalCluster => "approx-count+classical-cluster",
            Algorithm::ApproxQuantumCluster => "approx-count+quantum-cluster",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostInputs {
    pub n: f64,
    pub d: f64,
    pub s: u32,
    /// Largest distance between two anchors in the motif.
    pub l: u32,
    /// Number of motif instances.
    pub motifs: f64,
    /// Charge an `n·d` term for loading or sorting the input to the counting-based algorithms.
    pub preprocess: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmCost {
    pub algorithm: Algorithm,
    pub dominant_term: f64,
    pub exponent_of_n: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub inputs: CostInputs,
    pub costs: Vec<AlgorithmCost>,
    pub selected: Algorithm,
}

impl CostReport {
    pub fn cost(&self, algorithm: Algorithm) -> f64 {
        self.costs.iter().find(|c| c.algorithm == algorithm).unwrap().dominant_term
    }

    pub fn to_csv(&self) -> String {
        let i = &self.inputs;
        let mut out = String::new();
        writeln!(out, "# n={},d={},s={},l={},motifs={},preprocess={}", i.n, i.d, i.s, i.l, i.motifs, i.preprocess).unwrap();
        writeln!(out, "# k-means time is common to every algorithm and excluded").unwrap();
        writeln!(out, "algorithm,dominant_term,exponent_of_n,selected").unwrap();
        for c in &self.costs {
            writeln!(out, "{},{},{},{}", c.algorithm, c.dominant_term, c.exponent_of_n, c.algorithm == self.selected).unwrap();
        }
        out
    }
}

pub fn algorithm_costs(inputs: CostInputs) -> Result<CostReport> {
    let CostInputs { n, d, s, l, motifs, preprocess } = inputs;
    if !(n >= 1.0) || !(d >= 1.0) {
        return Err(Error::arg(format!("need n >= 1 and d >= 1, got n={n}, d={d}")));
    }
    if s < 3 {
        return Err(Error::arg(format!("motif size must be at least 3, got {s}")));
    }
    if l < 1 || l > s - 1 {
        return Err(Error::arg(format!("anchor distance must be in [1, {}], got {l}", s - 1)));
    }
    let walks = n * d.powi(s as i32 - 1);
    if !(motifs >= 0.0) || motifs > walks * (1.0 + 1e-12) {
        return Err(Error::arg(format!("motif count {motifs} outside [0, n·d^(s-1) = {walks}]")));
    }
    let load = n * d;
    let extra = if preprocess { load } else { 0.0 };
    let sf = s as f64;
    let terms = [
        (Algorithm::Classical, walks),
        (Algorithm::GroverPresorted, load + find_all_cost(walks, motifs)),
        (Algorithm::Grover, find_all_cost(n * d.powi(s as i32), motifs)),
        (Algorithm::ApproxClassicalCluster, extra + n * d.powf(l as f64 + sf / 2.0 - 1.0)),
        (Algorithm::ApproxQuantumCluster, extra + (n.powi(3) * d.powi(s as i32 - 2)).sqrt()),
    ];
    let costs: Vec<AlgorithmCost> = terms
        .into_iter()
        .map(|(algorithm, dominant_term)| AlgorithmCost {
            algorithm,
            dominant_term,
            exponent_of_n: if n > 1.0 { dominant_term.ln() / n.ln() } else { f64::NAN },
        })
        .collect();
    let selected = costs.iter().min_by(|a, b| a.dominant_term.total_cmp(&b.dominant_term)).unwrap().algorithm;
    Ok(CostReport { inputs, costs, selected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn query_examples() {
        assert_eq!(grover_cost(50.0, 50.0), 1.0);
        assert_eq!(find_all_cost(100.0, 0.0), 10.0);
        assert_relative_eq!(approx_count_cost(1e4, 100.0, 0.1, 0.01), 100.0 * 100f64.ln(), max_relative = 1e-12);
        assert_relative_eq!(approx_count_cost(1e4, 100.0, 0.1, 0.01), 460.517, epsilon = 1e-3);
    }

    #[test]
    fn classical_triangle() {
        let r = algorithm_costs(CostInputs { n: 1000.0, d: 10.0, s: 3, l: 1, motifs: 100.0, preprocess: false }).unwrap();
        assert_relative_eq!(r.cost(Algorithm::Classical), 1e5, max_relative = 1e-12);
    }

    #[test]
    fn dense_graph_exponents() {
        let n = 1e4;
        let r = algorithm_costs(CostInputs { n, d: n, s: 3, l: 1, motifs: 0.0, preprocess: false }).unwrap();
        let e = |a| r.costs.iter().find(|c| c.algorithm == a).unwrap().exponent_of_n;
        assert_relative_eq!(e(Algorithm::Classical), 3.0, epsilon = 1e-12);
        assert_relative_eq!(e(Algorithm::ApproxClassicalCluster), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn saturated_motif_count_gives_no_grover_speedup() {
        let (n, d, s) = (500.0_f64, 20.0_f64, 4u32);
        let motifs = n * d.powi(s as i32 - 1);
        let r = algorithm_costs(CostInputs { n, d, s, l: 1, motifs, preprocess: false }).unwrap();
        assert!(r.cost(Algorithm::Grover) >= r.cost(Algorithm::Classical));
    }

    #[test]
    fn argument_checks() {
        let ok = CostInputs { n: 100.0, d: 5.0, s: 3, l: 1, motifs: 1.0, preprocess: true };
        assert!(algorithm_costs(ok).is_ok());
        assert!(algorithm_costs(CostInputs { s: 2, ..ok }).is_err());
        assert!(algorithm_costs(CostInputs { l: 3, ..ok }).is_err());
        assert!(algorithm_costs(CostInputs { motifs: 1e9, ..ok }).is_err());
        let csv = algorithm_costs(ok).unwrap().to_csv();
        assert!(csv.lines().nth(2).unwrap() == "algorithm,dominant_term,exponent_of_n,selected");
        assert_eq!(csv.lines().filter(|l| l.ends_with(",true")).count(), 1);
    }
}
