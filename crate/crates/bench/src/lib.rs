//! Fixtures shared by the benchmarks.

use aczel_core::sampler::{random_hpd, random_sandwich_pair};
use aczel_core::{HermitianMatrix, SandwichPair};

pub const DIMS: [usize; 4] = [2, 5, 8, 16];

pub fn hpd(dim: usize) -> HermitianMatrix {
    random_hpd(dim, 1e4, dim as u64).expect("valid parameters")
}

pub fn sandwich(dim: usize) -> SandwichPair {
    random_sandwich_pair(dim, 0.3, 3.0, dim as u64).expect("valid parameters")
}
