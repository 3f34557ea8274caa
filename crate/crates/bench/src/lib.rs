//! Criterion benchmarks for the exact LP, membership checks, numerical search,
//! range pruning and vertex enumeration live in `benches/`.
