//! Criterion benchmarks for `geospec-core`; see `benches/`.
