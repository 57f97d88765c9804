//! Benchmark-only crate; see `benches/tilings.rs`.
