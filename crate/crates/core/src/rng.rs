//! Seeded random streams and deterministic replica execution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub type Rng = ChaCha8Rng;

/// Independent stream `stream` of the generator family selected by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs `f(r)` for every replica `r` on up to `workers` threads and returns the
/// results in replica order, so the output does not depend on `workers`.
pub fn run_replicas<T, F>(replicas: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 || replicas <= 1 {
        return (0..replicas).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..replicas).into_par_iter().map(&f).collect()),
        Err(_) => (0..replicas).map(f).collect(),
    }
}
