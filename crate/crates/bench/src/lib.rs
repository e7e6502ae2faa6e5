//! Shared fixtures for the criterion benchmarks.

use ifkp_core::generate::gen_scaling;
use ifkp_core::{InverseInstance, Norm};

/// Instance sizes timed by the solver benchmarks.
pub const SIZES: [usize; 3] = [500, 1000, 2000];

/// Sizes for the refined candidate scan, whose candidate count grows with
/// the profit caps.
pub const REFINED_SIZES: [usize; 3] = [25, 50, 100];

pub const SEED: u64 = 2024;

pub fn instance(n: usize, norm: Norm) -> InverseInstance {
    gen_scaling(n, SEED, norm)
}
