//! Simulated approximate counting and query-cost models for the quantum algorithms.

mod cost;
mod counter;
mod powerlaw;

pub use cost::{
    algorithm_costs, approx_count_cost, find_all_cost, grover_cost, Algorithm, AlgorithmCost, CostInputs, CostReport,
};
pub use counter::{Counter, ExactCounter, NoisyCounter};
pub use powerlaw::{best_quantum, powerlaw_analysis, powerlaw_exponents, tau0, tau1, PowerLawRegime};
