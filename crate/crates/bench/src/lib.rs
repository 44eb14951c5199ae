//! Criterion benchmarks for `nicholson-core`; see `benches/`.
