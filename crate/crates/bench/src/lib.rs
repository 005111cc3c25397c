//! Criterion benchmarks for `convexcodes`; see `benches/`.
