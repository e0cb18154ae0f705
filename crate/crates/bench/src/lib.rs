//! Benchmarks live in `benches/`; run them with `cargo bench -p schwarz-regions-bench`.
