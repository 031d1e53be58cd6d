//! Driver layer for `ipwidth-core`: the instance file format, seeded corpus
//! generation, and the benchmark harness. The `ipwidth` binary wires these
//! into subcommands; everything here is also usable as a library (the
//! acceptance suite does exactly that).

pub mod bench;
pub mod corpus;
pub mod format;

/// Environment variable supplying the default seed for corpus generation
/// when a spec does not pin one.
pub const SEED_ENV: &str = "IPWIDTH_SEED";

/// Reads the default seed from the environment; 0 when unset or invalid.
pub fn default_seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}
