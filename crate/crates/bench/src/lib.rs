//! Criterion benchmarks for wellcs; see `benches/`.
