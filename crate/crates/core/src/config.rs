//! Runtime configuration: the interval-refinement precision ladder and the
//! search budget for realization sweeps.
//!
//! All library values are immutable and all operations pure; the
//! configuration is the one piece of ambient state. It is installed once
//! (typically by the CLI from flags or the `CONCORDIA_PRECISION` /
//! `CONCORDIA_BUDGET` environment variables) and read lock-free afterwards.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

/// Width exponents of the refinement ladder: intervals are narrowed to
/// 2^-64, then 2^-128, then 2^-256 before giving up with
/// [`Error::PrecisionExhausted`](crate::Error::PrecisionExhausted).
pub const DEFAULT_LADDER: [u32; 3] = [64, 128, 256];

/// Default half-width bound of the grid searched by realization sweeps.
pub const DEFAULT_BUDGET: u64 = 64;

static LADDER_MAX: AtomicU32 = AtomicU32::new(256);
static BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_BUDGET);

/// Snapshot of the ambient configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Final rung of the precision ladder, as a width exponent.
    pub ladder_max_bits: u32,
    /// Half-width of integer grids walked by realization searches.
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            ladder_max_bits: 256,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Config {
    /// Install this configuration process-wide.
    pub fn install(&self) {
        LADDER_MAX.store(self.ladder_max_bits, Ordering::Relaxed);
        BUDGET.store(self.budget, Ordering::Relaxed);
    }

    /// Read the currently installed configuration.
    pub fn current() -> Self {
        Config {
            ladder_max_bits: LADDER_MAX.load(Ordering::Relaxed),
            budget: BUDGET.load(Ordering::Relaxed),
        }
    }
}

/// The ladder rungs implied by the installed configuration.
pub fn ladder() -> Vec<u32> {
    let max = LADDER_MAX.load(Ordering::Relaxed);
    let mut rungs: Vec<u32> = DEFAULT_LADDER.iter().copied().filter(|&b| b < max).collect();
    rungs.push(max);
    rungs
}

/// The installed realization search budget.
pub fn budget() -> u64 {
    BUDGET.load(Ordering::Relaxed)
}
