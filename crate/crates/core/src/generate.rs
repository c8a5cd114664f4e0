//! Automaton generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::Automaton;
use crate::error::AutomatonError;

/// Name of the generator behind [`random_automaton`], for echoing in outputs.
pub const PRNG_NAME: &str = "ChaCha8";

/// The Černý automaton with `n` states over letters `a = 0` and `b = 1`.
///
/// `a` is the cyclic shift `q -> q + 1 mod n`; `b` sends 0 to 1 and fixes
/// every other state. Its shortest reset word has length `(n - 1)^2`.
pub fn cerny(n: usize) -> Result<Automaton, AutomatonError> {
    if n < 2 {
        return Err(AutomatonError::CernyTooSmall(n));
    }
    let shift: Vec<usize> = (0..n).map(|q| (q + 1) % n).collect();
    let merge: Vec<usize> = (0..n).map(|q| if q == 0 { 1 } else { q }).collect();
    Automaton::from_letters(n, &[shift, merge])
}

/// A uniformly random complete automaton: every transition is drawn
/// independently and uniformly from `0..n`.
///
/// Transitions are drawn in row-major order `(q, a)` from a ChaCha8 stream
/// seeded with `seed`, so the same `(n, k, seed)` always yields the same table.
///
/// Panics if `n` or `k` is zero.
pub fn random_automaton(n: usize, k: usize, seed: u64) -> Automaton {
    assert!(n >= 1 && k >= 1, "random automaton needs n >= 1 and k >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    Automaton::from_table(n, k, table).expect("generated targets are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cerny_4_table() {
        let c4 = cerny(4).unwrap();
        assert_eq!(c4.letter_action(0), vec![1, 2, 3, 0]);
        assert_eq!(c4.letter_action(1), vec![1, 1, 2, 3]);
    }

    #[test]
    fn cerny_rejects_small_n() {
        assert_eq!(cerny(1).unwrap_err(), AutomatonError::CernyTooSmall(1));
        assert!(cerny(0).is_err());
    }

    #[test]
    fn cerny_letter_shapes() {
        for n in 2..20 {
            let c = cerny(n).unwrap();
            let mut shift = c.letter_action(0);
            shift.sort_unstable();
            assert_eq!(shift, (0..n).collect::<Vec<_>>());
            let fixed = (0..n).filter(|&q| c.next(q, 1) == q).count();
            assert_eq!(fixed, n - 1);
        }
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_automaton(50, 3, 42);
        let b = random_automaton(50, 3, 42);
        assert_eq!(a, b);
        assert_ne!(a, random_automaton(50, 3, 43));
    }

    #[test]
    fn single_state_random_is_all_zero() {
        for seed in 0..10 {
            let a = random_automaton(1, 4, seed);
            assert!(a.table().iter().all(|&q| q == 0));
        }
    }

    #[test]
    fn first_transition_is_uniform_over_seeds() {
        // Chi-square goodness of fit, 4 degrees of freedom; 18.47 is the
        // 0.999 quantile.
        let n = 5;
        let samples = 10_000;
        let mut counts = [0usize; 5];
        for seed in 0..samples {
            counts[random_automaton(n, 2, seed as u64).next(0, 0)] += 1;
        }
        let expected = samples as f64 / n as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 18.47, "chi2 = {chi2}, counts = {counts:?}");
    }
}
