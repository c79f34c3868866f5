//! Criterion benchmarks for `altafini-core`; see `benches/`.
