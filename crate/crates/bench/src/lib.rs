//! Criterion benchmarks for the bound machinery; see `benches/`.
