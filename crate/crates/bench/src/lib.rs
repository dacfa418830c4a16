//! Benchmark-only crate; see `benches/compositions.rs`.
