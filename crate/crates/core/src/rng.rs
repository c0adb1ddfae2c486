//! Tagged, seedable random streams.
//!
//! Every stochastic draw in the crate comes from a stream addressed by
//! `(seed, tag, indices)`. Two draws with the same address produce the same
//! value no matter what happened in between, which is what makes
//! common-random-numbers comparisons across dispatching rules valid: the
//! setup time of operation `(job, op)` is the same under every rule that
//! eventually schedules it.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// A stream addressed by seed, a purpose tag and integer indices.
pub fn stream(seed: u64, tag: &str, indices: &[u64]) -> ChaCha8Rng {
    let mut state = seed ^ fnv1a(tag.as_bytes());
    let mut key = [0u8; 32];
    let mut acc = splitmix64(&mut state);
    for &ix in indices {
        state ^= ix.wrapping_mul(0x2545_f491_4f6c_dd1d);
        acc ^= splitmix64(&mut state);
    }
    for chunk in key.chunks_mut(8) {
        acc = splitmix64(&mut state) ^ acc.rotate_left(17);
        chunk.copy_from_slice(&acc.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
