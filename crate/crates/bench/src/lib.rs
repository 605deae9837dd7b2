//! Criterion benchmarks for the series kernels; see `benches/`.
