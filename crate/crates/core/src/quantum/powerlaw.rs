//! Exponents of `n` for each algorithm on power-law graphs with degree exponent `tau`,
//! clique motifs of size `s`, and maximum degree `n^(1/(tau-1))`.

use super::cost::Algorithm;
use crate::error::{Error, Result};

/// Exponent at which approximate counting with quantum clustering stops being fastest.
pub fn tau0(s: u32) -> f64 {
    let s = s as f64;
    ((s * s - 2.0 * s + 4.0).sqrt() + 2.0 * s - 2.0) / s
}

/// Exponent above which skipping the pre-sort wins for triangles.
pub fn tau1() -> f64 {
    (5.0 + 10f64.sqrt()) / 3.0
}

/// Exponents for all algorithms, in [`Algorithm::ALL`] order. Defined on the closed interval
/// `[2, 3]` so limits can be evaluated directly.
pub fn powerlaw_exponents(s: u32, tau: f64) -> [(Algorithm, f64); 5] {
    let s = s as f64;
    let inv = 1.0 / (tau - 1.0);
    let grover = 0.5 + s / 2.0 * (inv + (3.0 - tau) / 2.0);
    [
        (Algorithm::Classical, 1.0 + (s - 1.0) * inv),
        (Algorithm::GroverPresorted, (tau * inv).max(grover - inv / 2.0)),
        (Algorithm::Grover, grover),
        (Algorithm::ApproxClassicalCluster, 1.0 + s * inv / 2.0),
        (Algorithm::ApproxQuantumCluster, 1.5 + s * inv / 2.0 - inv),
    ]
}

/// Fastest quantum algorithm and its exponent. Ties go to the earlier entry of [`Algorithm::QUANTUM`].
pub fn best_quantum(s: u32, tau: f64) -> (Algorithm, f64) {
    powerlaw_exponents(s, tau)
        .into_iter()
        .filter(|(a, _)| *a != Algorithm::Classical)
        .fold(None, |best: Option<(Algorithm, f64)>, cur| match best {
            Some(b) if b.1 <= cur.1 => Some(b),
            _ => Some(cur),
        })
        .unwrap()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawRegime {
    pub s: u32,
    pub tau: f64,
    pub exponents: [(Algorithm, f64); 5],
    pub tau0: f64,
    pub tau1: f64,
    pub best: Algorithm,
    pub best_exponent: f64,
}

impl PowerLawRegime {
    pub fn exponent(&self, algorithm: Algorithm) -> f64 {
        self.exponents.iter().find(|(a, _)| *a == algorithm).unwrap().1
    }
}

pub fn powerlaw_analysis(s: u32, tau: f64) -> Result<PowerLawRegime> {
    if s < 3 {
        return Err(Error::arg(format!("motif size must be at least 3, got {s}")));
    }
    if !(tau > 2.0 && tau < 3.0) {
        return Err(Error::arg(format!("tau must lie strictly between 2 and 3, got {tau}")));
    }
    let (best, best_exponent) = best_quantum(s, tau);
    Ok(PowerLawRegime { s, tau, exponents: powerlaw_exponents(s, tau), tau0: tau0(s), tau1: tau1(), best, best_exponent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn crossovers() {
        assert_relative_eq!(tau0(3), (4.0 + 7f64.sqrt()) / 3.0, epsilon = 1e-12);
        assert!((tau0(3) - 2.2153).abs() < 1e-3);
        assert!((tau1() - 2.7208).abs() < 1e-3);
        for s in 3..12 {
            assert!(tau0(s) > 2.0 && tau0(s) < 3.0);
        }
    }

    #[test]
    fn four_clique_near_two() {
        let e = powerlaw_exponents(4, 2.0);
        assert_relative_eq!(e[0].1, 4.0, epsilon = 1e-12);
        let (best, x) = best_quantum(4, 2.0);
        assert_eq!(best, Algorithm::ApproxQuantumCluster);
        assert_relative_eq!(x, 2.5, epsilon = 1e-12);
    }

    #[test]
    fn rejects_boundary() {
        assert!(powerlaw_analysis(3, 3.0).is_err());
        assert!(powerlaw_analysis(3, 2.0).is_err());
        assert!(powerlaw_analysis(2, 2.5).is_err());
        assert_eq!(powerlaw_analysis(3, 2.9).unwrap().best, Algorithm::Grover);
    }
}
