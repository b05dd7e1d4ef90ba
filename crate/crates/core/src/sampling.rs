//! Seeded sampling. Every stochastic check takes an explicit seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest norm used when sampling ball vectors.
pub const DEFAULT_MAX_NORM: f64 = 0.99;

/// Largest norm for samples fed through nested sums (triples, gyration
/// matrices). Closer to the boundary, round-off in `1 − ‖v‖²` dominates the
/// residuals of the loop property.
pub const TRIPLE_MAX_NORM: f64 = 0.9;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A vector with uniformly random direction and norm uniform in `[0, max_norm]`.
pub fn random_ball_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_norm: f64) -> Vec<f64> {
    let radius = rng.gen_range(0.0..=max_norm);
    loop {
        // Rejection sampling from the cube gives a uniform direction.
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            return v.into_iter().map(|x| x * radius / norm).collect();
        }
    }
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
