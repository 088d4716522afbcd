//! Random graph generators and the perturbation-robustness harness.

mod generators;
mod phi_diff;

pub use generators::{
    gen_circles, gen_cluster_graph, gen_gnp, gen_lfr_like, gen_powerlaw_hidden_variable, power_law_exponent_mle,
    CirclesParams, ClusterParams, Generated, LfrParams,
};
pub use phi_diff::{
    phi_diff_experiment, records_csv, summarize, summary_csv, ExperimentConfig, GeneratorSpec, PhiDiffOutcome,
    PhiDiffRecord, PhiDiffSummary,
};
