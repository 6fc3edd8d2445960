//! Shared input builders for the criterion benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use listsort_core::{LinkedList, NodeArena};

/// Deterministic uniform 32-bit keys.
pub fn uniform_keys(n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| u64::from(rng.random::<u32>())).collect()
}

/// Keys already in ascending order — the adversarial case for the one-pivot
/// partition sort.
pub fn sorted_keys(n: usize) -> Vec<u64> {
    (0..n as u64).collect()
}

pub fn build_list(arena: &mut NodeArena, keys: &[u64]) -> LinkedList {
    arena.from_sequence(keys).expect("bench input fits the arena")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_streams_are_deterministic() {
        assert_eq!(uniform_keys(100, 9), uniform_keys(100, 9));
        assert_ne!(uniform_keys(100, 9), uniform_keys(100, 10));
        assert!(uniform_keys(100, 9).iter().all(|&k| k <= u64::from(u32::MAX)));
    }
}
