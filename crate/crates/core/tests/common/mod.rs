#![allow(dead_code)]

use proptest::test_runner::{Config, RngSeed};

/// `SYNCHRO_SEED` overrides the fixed default.
pub fn seed() -> u64 {
    std::env::var("SYNCHRO_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed)
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    }
}
