use rand_core::{Rng, SeedableRng};

use crate::error::Result;
use crate::fintop::Topology;
use crate::setfam::{check_ground, full_mask, SetFamily};

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then the output is `state`
/// mixed by `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
/// `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`, `z ^ (z >> 31)`
/// (wrapping arithmetic), with the seed as the initial state. Bounded draws
/// take the output modulo the bound.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    inner: rand_xoshiro::SplitMix64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { inner: rand_xoshiro::SplitMix64::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// A draw from `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// A uniformly random subset of `{0, .., n - 1}` as a mask.
    pub fn subset(&mut self, n: usize) -> u32 {
        (self.next_u64() as u32) & full_mask(n)
    }
}

/// The topology generated by a subbase of `below(n + 1)` random subsets.
pub fn random_topology(n: usize, seed: u64) -> Result<Topology> {
    check_ground(n)?;
    let mut rng = SplitMix64::new(seed);
    let k = rng.below(n as u64 + 1);
    let subbase = SetFamily::from_masks(n, (0..k).map(|_| rng.subset(n)));
    Topology::from_subbase(n, &subbase)
}

/// A family of `below(max_members + 1)` random draws, duplicates merged.
pub fn random_family(ground: usize, max_members: usize, seed: u64) -> Result<SetFamily> {
    check_ground(ground)?;
    let mut rng = SplitMix64::new(seed);
    let k = rng.below(max_members as u64 + 1);
    Ok(SetFamily::from_masks(ground, (0..k).map(|_| rng.subset(ground))))
}
