//! Deterministic RNG substreams. Every stochastic decision inside a run
//! draws from a stream derived from (seed, generation, candidate index),
//! so serial and parallel execution produce identical traces.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tag for the per-generation control stream (selection, crossover).
pub(crate) const CONTROL_LANE: u64 = u64::MAX;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds lane identifiers into the master seed.
pub fn derive_seed(master: u64, lanes: &[u64]) -> u64 {
    let mut state = splitmix64(master ^ 0xa076_1d64_78bd_642f);
    for &lane in lanes {
        state = splitmix64(state ^ lane.wrapping_mul(0x2545_f491_4f6c_dd1d));
    }
    state
}

/// The RNG for one (generation, candidate) cell of a run.
pub fn rng_for(master: u64, generation: u64, candidate: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, &[generation, candidate]))
}

/// FNV-1a, used to fold strings (image names, variant names) into seeds.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100_0000_01b3);
    }
    hash
}
