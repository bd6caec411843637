//! Seeded, counter-based randomness.
//!
//! Every random stream is a ChaCha8 keystream keyed by the run seed and
//! selected by a stream number, so results do not depend on call order
//! across independent tasks or on thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
