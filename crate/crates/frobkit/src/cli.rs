//! Batch command-line surface; fleshed out below.

/// Entry point used by the `frobkit` binary.
pub fn run() -> i32 {
    0
}
