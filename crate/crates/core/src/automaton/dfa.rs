use std::collections::{BTreeSet, HashSet};

use super::{Nfa, Word};
use crate::error::{Error, Result};
use crate::relcalc::{BoolRel, BoolVec};

/// A complete deterministic automaton whose states remember the subset of
/// some other automaton's states they were built from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    alphabet: Vec<String>,
    next: Vec<Vec<usize>>,
    start: usize,
    is_final: Vec<bool>,
    subsets: Vec<BoolVec>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<String>,
        next: Vec<Vec<usize>>,
        start: usize,
        is_final: Vec<bool>,
        subsets: Vec<BoolVec>,
    ) -> Result<Self> {
        let m = next.len();
        let bad = |msg: String| Err(Error::InvalidAutomaton(msg));
        if m == 0 || start >= m {
            return bad(format!("start state {start} out of range for {m} states"));
        }
        if is_final.len() != m || subsets.len() != m {
            return bad("per-state vectors disagree on the state count".into());
        }
        for (s, row) in next.iter().enumerate() {
            if row.len() != alphabet.len() || row.iter().any(|&t| t >= m) {
                return bad(format!("transition row of state {s} is not total"));
            }
        }
        if subsets.iter().collect::<HashSet<_>>().len() != m {
            return bad("subset labels are not distinct".into());
        }
        Ok(Self { alphabet, next, start, is_final, subsets })
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn next(&self, s: usize, x: usize) -> usize {
        self.next[s][x]
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.is_final[s]
    }

    pub fn subset(&self, s: usize) -> &BoolVec {
        &self.subsets[s]
    }

    pub fn run(&self, u: &Word) -> usize {
        u.0.iter().fold(self.start, |s, &x| self.next[s][x])
    }

    pub fn accepts(&self, u: &Word) -> bool {
        self.is_final[self.run(u)]
    }

    pub fn bounded_language(&self, maxlen: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut frontier = vec![(Word::empty(), self.start)];
        for len in 0..=maxlen {
            out.extend(frontier.iter().filter(|(_, s)| self.is_final[*s]).map(|(u, _)| u.clone()));
            if len == maxlen {
                break;
            }
            frontier = frontier
                .iter()
                .flat_map(|(u, s)| (0..self.alphabet.len()).map(move |x| (u.push(x), self.next[*s][x])))
                .collect();
        }
        out
    }

    /// The same automaton viewed as an `Nfa` with a single initial state.
    pub fn to_nfa(&self) -> Nfa {
        let m = self.num_states();
        let delta = (0..self.alphabet.len())
            .map(|x| BoolRel::from_function(m, &self.next.iter().map(|row| row[x]).collect::<Vec<_>>()))
            .collect();
        Nfa::new(self.alphabet.clone(), delta, BoolVec::singleton(m, self.start), BoolVec::from_bools(&self.is_final))
            .expect("a valid dfa converts to a valid nfa")
    }
}
