//! Seed derivation and counter-based randomness.
//!
//! Every random decision is a pure function of a 64-bit key. Sub-streams are
//! derived from a master seed with fixed labels, so adding a new consumer
//! never shifts the values another one sees. Per-edge coins are hashed from
//! `(key, lo, hi)` and therefore do not depend on enumeration order or on the
//! number of workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fixed labels for the sub-streams derived from an instance seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Points = 0x7f4a_7c15_9e37_79b9,
    Thinning = 0x3c6e_f372_fe94_f82b,
    Channel = 0xa54f_f53a_5f1d_36f1,
    Hamilton = 0x510e_527f_ade6_82d1,
    Trial = 0x9b05_688c_2b3e_6c1f,
    Sampling = 0x1f83_d9ab_fb41_bd6b,
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive(seed: u64, stream: Stream) -> u64 {
    mix64(mix64(seed) ^ stream as u64)
}

pub fn derive_indexed(seed: u64, stream: Stream, index: u64) -> u64 {
    mix64(derive(seed, stream) ^ mix64(index.wrapping_add(0x2545_f491_4f6c_dd1d)))
}

/// Maps 64 random bits to a uniform double in `[0, 1)`.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform coin for the unordered pair `{lo, hi}` under `key`.
#[inline]
pub fn pair_uniform(key: u64, lo: u32, hi: u32) -> f64 {
    let code = ((lo as u64) << 32) | hi as u64;
    unit_f64(mix64(mix64(code ^ key).wrapping_add(key)))
}

pub fn stream_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
