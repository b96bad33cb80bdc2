use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every random draw in the crate comes from one of these, so results are a
/// pure function of the seed.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}
