//! Seeded randomness. Every stochastic construction in the crate takes either
//! a `u64` seed or a `&mut SeededRng`, so results are pure functions of their
//! inputs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}
