//! Criterion benchmarks for the hahn-core kernels; see `benches/`.
