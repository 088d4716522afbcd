use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Source of (possibly noisy) motif counts for approximate motif-graph construction.
pub trait Counter: Sync {
    /// Estimate of the true count `t` for the vertex pair `key`, searching `search_space` items.
    fn estimate(&self, t: u64, eps: f64, delta: f64, search_space: f64, key: (usize, usize)) -> f64;

    fn seed(&self) -> u64 {
        0
    }
}

/// Returns the true count.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactCounter;

impl Counter for ExactCounter {
    fn estimate(&self, t: u64, _eps: f64, _delta: f64, _search_space: f64, _key: (usize, usize)) -> f64 {
        t as f64
    }
}

/// Simulated approximate counting: zero stays zero, anything else lands uniformly in
/// `[(1-eps)t, (1+eps)t]`. In failure mode a draw fails with probability `delta` and is
/// then uniform in `[0, 2t]`. Each key gets its own random stream, so results do not
/// depend on call order.
#[derive(Debug, Default)]
pub struct NoisyCounter {
    seed: u64,
    failure_mode: bool,
    queries: AtomicU64,
    calls: AtomicU64,
}

impl NoisyCounter {
    pub fn new(seed: u64) -> Self {
        NoisyCounter { seed, ..Default::default() }
    }

    pub fn with_failure_mode(mut self, on: bool) -> Self {
        self.failure_mode = on;
        self
    }

    pub fn failure_mode(&self) -> bool {
        self.failure_mode
    }

    /// Modeled query total across all calls so far.
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn noisy_count(&self, t: u64, eps: f64, delta: f64, search_space: f64, key: (usize, usize)) -> f64 {
        let n = search_space.max(1.0);
        let cost = if t == 0 { n.sqrt() } else { (n / t as f64).sqrt() / eps };
        self.queries.fetch_add(cost.ceil() as u64, Ordering::Relaxed);
        self.calls.fetch_add(1, Ordering::Relaxed);
        if t == 0 {
            return 0.0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((key.0 as u64) << 32) ^ key.1 as u64);
        let t = t as f64;
        if self.failure_mode && rng.random::<f64>() < delta {
            return rng.random_range(0.0..=2.0 * t);
        }
        rng.random_range((1.0 - eps) * t..=(1.0 + eps) * t)
    }
}

impl Counter for NoisyCounter {
    fn estimate(&self, t: u64, eps: f64, delta: f64, search_space: f64, key: (usize, usize)) -> f64 {
        self.noisy_count(t, eps, delta, search_space, key)
    }

    fn seed(&self) -> u64 {
        self.seed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_certain() {
        for seed in 0..50 {
            let c = NoisyCounter::new(seed).with_failure_mode(true);
            assert_eq!(c.noisy_count(0, 0.5, 0.9, 100.0, (1, 2)), 0.0);
        }
    }

    #[test]
    fn draws_stay_in_band() {
        let c = NoisyCounter::new(7);
        for i in 0..2000 {
            let x = c.noisy_count(100, 0.1, 0.01, 1e4, (i, 0));
            assert!((90.0..=110.0).contains(&x), "{x}");
        }
        assert_eq!(c.calls(), 2000);
        assert_eq!(c.queries(), 2000 * 100);
    }

    #[test]
    fn key_streams_are_reproducible() {
        let a = NoisyCounter::new(3).noisy_count(10, 0.3, 0.1, 10.0, (4, 9));
        let b = NoisyCounter::new(3).noisy_count(10, 0.3, 0.1, 10.0, (4, 9));
        let c = NoisyCounter::new(3).noisy_count(10, 0.3, 0.1, 10.0, (9, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
