//! Criterion benchmarks for tonalspace; see `benches/`.
