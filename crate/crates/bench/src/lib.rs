//! Criterion benchmarks for `raagtl-core`; see `benches/`.
