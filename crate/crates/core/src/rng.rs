//! Seeded randomness.
//!
//! Every random draw in the crate goes through [`Xoshiro256PlusPlus`]
//! seeded with `seed_from_u64` (SplitMix64 expansion), and bounded draws use
//! `u64` ranges only, so generated instances do not depend on pointer width
//! or host platform.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub type InstanceRng = Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
pub fn child_seed(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

/// Uniform draw from `0..bound`.
pub fn below<R: Rng>(rng: &mut R, bound: usize) -> usize {
    debug_assert!(bound > 0);
    rng.random_range(0..bound as u64) as usize
}

/// Uniform random permutation of `0..len` by Fisher–Yates.
pub fn permutation<R: Rng>(rng: &mut R, len: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        let j = below(rng, i + 1);
        p.swap(i, j);
    }
    p
}
