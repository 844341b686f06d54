//! Deterministic random number generation.
//!
//! Every random choice in this crate is driven by `xoshiro256**` seeded from a
//! single `u64` through SplitMix64 (the reference seeding procedure of the
//! xoshiro authors, as implemented by [`rand_xoshiro`]). Pattern generation
//! draws bounded integers with [`uniform_below`], whose rejection rule is
//! spelled out below so that other implementations can reproduce grids
//! bit-for-bit from the same seed.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// The generator used throughout the crate.
pub type Rng = Xoshiro256StarStar;

/// Seeds the crate generator (`xoshiro256**`, state filled by SplitMix64).
pub fn seeded(seed: u64) -> Rng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Draws an integer uniformly from `0..bound`.
///
/// Takes successive 64-bit outputs `r` and rejects those with
/// `r >= 2^64 - (2^64 mod bound)`; the first accepted `r` yields `r mod bound`.
pub fn uniform_below(rng: &mut Rng, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    // 2^64 mod bound, computed without overflow.
    let rem = (u64::MAX % bound + 1) % bound;
    let limit = u64::MAX - rem; // values in (limit, MAX] are rejected when rem > 0
    loop {
        let r = rng.next_u64();
        if rem == 0 || r <= limit {
            return r % bound;
        }
    }
}
