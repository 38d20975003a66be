use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Nfa;
use crate::error::{Error, Result};
use crate::relcalc::{BoolRel, BoolVec};

/// A seeded random automaton. Each transition, initial and terminal bit is set
/// independently with probability `density`; if no initial (or terminal) state
/// results, one is picked at random.
pub fn random_nfa(n: usize, alphabet: &[&str], density: f64, seed: u64) -> Result<Nfa> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidDensity(density));
    }
    if n == 0 {
        return Err(Error::InvalidAutomaton("state count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = alphabet
        .iter()
        .map(|_| {
            let mut d = BoolRel::empty(n, n);
            for p in 0..n {
                for q in 0..n {
                    d.set(p, q, rng.random_bool(density));
                }
            }
            d
        })
        .collect();
    let vector = |rng: &mut ChaCha8Rng| {
        let mut v = BoolVec::from_bools(&(0..n).map(|_| rng.random_bool(density)).collect::<Vec<_>>());
        if v.is_zero() {
            v.set(rng.random_range(0..n), true);
        }
        v
    };
    let sigma = vector(&mut rng);
    let tau = vector(&mut rng);
    Nfa::new(alphabet.iter().copied(), delta, sigma, tau)
}
