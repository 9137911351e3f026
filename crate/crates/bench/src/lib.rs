//! Input generators shared by the benchmarks.

use mpqenum_core::{StringRep, Vertex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Reproducible random string representations on `n` vertices.
pub fn random_strings(n: usize, count: usize, seed: u64) -> Vec<StringRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut tokens: Vec<Vertex> = (1..=n as Vertex).flat_map(|v| [v, v]).collect();
            tokens.shuffle(&mut rng);
            StringRep::new(tokens).expect("every vertex occurs twice")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn generator_is_reproducible() {
        let a = super::random_strings(10, 3, 7);
        assert_eq!(a, super::random_strings(10, 3, 7));
        assert!(a.iter().all(|s| s.n() == 10));
    }
}
