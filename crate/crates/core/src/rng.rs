//! Seeded random streams.
//!
//! Each consumer draws from its own ChaCha stream of the run seed, so the
//! jitter initialization is identical whether or not relaxation follows it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream for the initial vertical jitter.
pub const JITTER_STREAM: u64 = 0;
/// Stream for the Voronoi discretization sites.
pub const SITE_STREAM: u64 = 1;
/// Stream for the free horizontal coordinate of unconstrained Lloyd.
pub const FREE_X_STREAM: u64 = 2;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
