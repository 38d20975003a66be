//! Randomized property suite behind the `selftest` command.

use std::fmt;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{random_nfa, Nfa};
use crate::bisim::{
    check, greatest_backward_bisim, greatest_backward_forward_bisim, greatest_fb_equivalence, greatest_forward_bisim,
    greatest_weak_forward_bisim, wfb_equivalence_bound, BisimKind,
};
use crate::equivalence::{
    function_fb_iff_bfb, reduce, uniform_bfb_crosscheck, uniform_fb_crosscheck, wfb_equivalent, ReduceMode,
};
use crate::error::Result;
use crate::format::{parse_nfa, print_nfa};
use crate::gen::{random_function, random_uniform};
use crate::nerode::{nerode, reverse_nerode};
use crate::relcalc::is_partial_uniform;

const DEPTH: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestConfig {
    pub max_states: usize,
    pub seed: u64,
    pub trials: usize,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialResult {
    pub index: usize,
    pub seed: u64,
    pub failures: Vec<String>,
}

impl TrialResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for TrialResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "trial {} seed {}: ok", self.index, self.seed);
        }
        write!(f, "trial {} seed {}: FAIL", self.index, self.seed)?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

/// The names of the properties each trial checks, in order.
pub const PROPERTIES: [&str; 10] = [
    "fb-relation-checks",
    "bfb-relation-checks",
    "duality",
    "fb-factor-language",
    "reduce-language",
    "wfb-relation-checks",
    "wfb-factor-equivalent",
    "uniform-crosscheck",
    "function-fb-iff-bfb",
    "determinize-and-format",
];

struct Trial {
    a: Nfa,
    b: Nfa,
    seed: u64,
}

impl Trial {
    fn new(max_states: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=max_states);
        let m = rng.random_range(1..=max_states);
        let density = rng.random_range(0.15..0.5);
        let a = random_nfa(n, &["x", "y"], density, rng.random())?;
        // every third trial pairs `a` with a factor of itself, so positive cases occur
        let b = if seed.is_multiple_of(3) {
            a.factor(&greatest_fb_equivalence(&a)?)?
        } else {
            random_nfa(m, &["x", "y"], density, rng.random())?
        };
        Ok(Self { a, b, seed })
    }

    fn property(&self, name: &str) -> Result<std::result::Result<(), String>> {
        let (a, b) = (&self.a, &self.b);
        let fail = |msg: String| Ok(Err(msg));
        match name {
            "fb-relation-checks" => {
                if let Some(r) = greatest_forward_bisim(a, b)?.nonempty_relation() {
                    if !check(BisimKind::ForwardBisim, a, b, r)?.holds() {
                        return fail(format!("greatest relation fails the checker\n{r}"));
                    }
                    if !is_partial_uniform(r) {
                        return fail(format!("greatest relation is not partial uniform\n{r}"));
                    }
                }
            }
            "bfb-relation-checks" => {
                if let Some(r) = greatest_backward_forward_bisim(a, b)?.nonempty_relation() {
                    if !check(BisimKind::BackwardForwardBisim, a, b, r)?.holds() {
                        return fail(format!("greatest relation fails the checker\n{r}"));
                    }
                }
            }
            "duality" => {
                let bb = greatest_backward_bisim(a, b)?;
                let fb = greatest_forward_bisim(&a.reverse(), &b.reverse())?;
                if bb.relation() != fb.relation() {
                    return fail("backward result differs from forward result on reversed automata".into());
                }
            }
            "fb-factor-language" => {
                let f = a.factor(&greatest_fb_equivalence(a)?)?;
                if f.bounded_language(DEPTH) != a.bounded_language(DEPTH) {
                    return fail("factor changes the language".into());
                }
            }
            "reduce-language" => {
                let lang = a.bounded_language(DEPTH);
                for mode in ReduceMode::ALL {
                    let r = reduce(a, mode)?;
                    if r.num_states() > a.num_states() || r.bounded_language(DEPTH) != lang {
                        return fail(format!("reduce {} changes the language or grows", mode.name()));
                    }
                }
            }
            "wfb-relation-checks" => {
                if let Some(r) = greatest_weak_forward_bisim(a, b)?.nonempty_relation() {
                    if !check(BisimKind::WeakForwardBisim, a, b, r)?.holds() || !is_partial_uniform(r) {
                        return fail(format!("greatest weak relation fails the checker or uniformity\n{r}"));
                    }
                }
            }
            "wfb-factor-equivalent" => {
                let f = a.factor(&wfb_equivalence_bound(a))?;
                if !wfb_equivalent(a, &f)?.equivalent {
                    return fail("automaton is not weakly equivalent to its weak factor".into());
                }
            }
            "uniform-crosscheck" => {
                let phi = random_uniform(a.num_states(), b.num_states(), self.seed);
                uniform_fb_crosscheck(a, b, &phi)?;
                uniform_bfb_crosscheck(a, b, &phi)?;
            }
            "function-fb-iff-bfb" => {
                function_fb_iff_bfb(a, b, &random_function(a.num_states(), b.num_states(), self.seed))?;
            }
            "determinize-and-format" => {
                if nerode(a).bounded_language(DEPTH) != a.bounded_language(DEPTH) {
                    return fail("determinization changes the language".into());
                }
                let rev: std::collections::BTreeSet<_> =
                    a.bounded_language(DEPTH).iter().map(|u| u.reversed()).collect();
                if reverse_nerode(a).bounded_language(DEPTH) != rev {
                    return fail("reverse determinization is not the reversed language".into());
                }
                if parse_nfa(&print_nfa(a))? != *a {
                    return fail("text format does not round-trip".into());
                }
            }
            other => unreachable!("unknown property {other}"),
        }
        Ok(Ok(()))
    }
}

fn run_trial(max_states: usize, index: usize, seed: u64) -> TrialResult {
    let mut failures = Vec::new();
    match Trial::new(max_states, seed) {
        Err(e) => failures.push(format!("generation: {e}")),
        Ok(trial) => {
            for name in PROPERTIES {
                match trial.property(name) {
                    Ok(Ok(())) => {}
                    Ok(Err(msg)) => failures.push(format!("{name}: {msg}")),
                    Err(e) => failures.push(format!("{name}: error: {e}")),
                }
            }
        }
    }
    TrialResult { index, seed, failures }
}

/// Runs `trials` seeded trials, fanned out over `workers` threads, and
/// returns the results in trial order.
pub fn run(config: SelftestConfig) -> Vec<TrialResult> {
    let max_states = config.max_states.max(1);
    let workers = config.workers.clamp(1, config.trials.max(1));
    let seed_of = |i: usize| config.seed.wrapping_add(i as u64);
    let mut results: Vec<TrialResult> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..config.trials)
                        .step_by(workers)
                        .map(|i| run_trial(max_states, i, seed_of(i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("selftest worker panicked")).collect()
    });
    results.sort_by_key(|r| r.index);
    results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let results = run(SelftestConfig { max_states: 4, seed: 7, trials: 24, workers: 3 });
        assert_eq!(results.len(), 24);
        assert!(results.iter().enumerate().all(|(i, r)| r.index == i));
        for r in &results {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = run(SelftestConfig { max_states: 3, seed: 1, trials: 9, workers: 1 });
        let four = run(SelftestConfig { max_states: 3, seed: 1, trials: 9, workers: 4 });
        assert_eq!(one, four);
    }
}
