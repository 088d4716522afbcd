//! Criterion benchmarks for the motif clustering pipeline; see `benches/`.
