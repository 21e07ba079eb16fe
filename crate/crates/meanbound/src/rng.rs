//! Seeded, portable random streams.
//!
//! Every trial draws from its own xoshiro256** stream, seeded through
//! splitmix64 from `(seed, stream, index)`, so serial and parallel runs see
//! identical numbers.

use rand::{Rng as _, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub type Rng = Xoshiro256StarStar;

/// splitmix64 output function applied to `x + golden gamma`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit id of a stream name (FNV-1a).
pub fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn substream(seed: u64, stream: u64, index: u64) -> Rng {
    let key = splitmix64(seed ^ splitmix64(stream ^ splitmix64(index)));
    Rng::seed_from_u64(key)
}

/// Uniform on `[lo, hi)`.
pub fn uniform(rng: &mut Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Log-uniform on `[lo, hi)`; requires `0 < lo <= hi`.
pub fn log_uniform(rng: &mut Rng, lo: f64, hi: f64) -> f64 {
    let x = uniform(rng, lo.ln(), hi.ln()).exp();
    x.clamp(lo, hi)
}
