mod dfa;
mod iso;
mod random;

use std::collections::BTreeSet;

pub use dfa::Dfa;
pub use iso::{find_isomorphism, is_isomorphism};
pub use random::random_nfa;

use crate::error::{Error, Result};
use crate::relcalc::{rel_vec, vec_rel, BoolRel, BoolVec, Partition};

/// A word over an automaton's alphabet, stored as symbol indices.
///
/// Ordered by length first, then lexicographically by symbol index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn push(&self, x: usize) -> Self {
        let mut v = self.0.clone();
        v.push(x);
        Self(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A nondeterministic automaton without ε-transitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nfa {
    alphabet: Vec<String>,
    delta: Vec<BoolRel>,
    sigma: BoolVec,
    tau: BoolVec,
}

fn valid_symbol(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '#' || c == ':' || c == ',')
}

impl Nfa {
    pub fn new<S: Into<String>>(
        alphabet: impl IntoIterator<Item = S>,
        delta: Vec<BoolRel>,
        sigma: BoolVec,
        tau: BoolVec,
    ) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        if alphabet.is_empty() {
            return Err(Error::InvalidAutomaton("alphabet is empty".into()));
        }
        for (i, s) in alphabet.iter().enumerate() {
            if !valid_symbol(s) {
                return Err(Error::InvalidAutomaton(format!("invalid symbol name `{s}`")));
            }
            if alphabet[..i].contains(s) {
                return Err(Error::InvalidAutomaton(format!("symbol `{s}` declared twice")));
            }
        }
        if delta.len() != alphabet.len() {
            return Err(Error::InvalidAutomaton(format!(
                "{} symbols but {} transition relations",
                alphabet.len(),
                delta.len()
            )));
        }
        let n = sigma.len();
        if tau.len() != n {
            return Err(Error::SizeMismatch { expected: n, actual: tau.len() });
        }
        for d in &delta {
            if d.rows() != n || d.cols() != n {
                return Err(Error::InvalidAutomaton(format!(
                    "transition relation has shape {} for {n} states",
                    d.shape()
                )));
            }
        }
        Ok(Self { alphabet, delta, sigma, tau })
    }

    /// Convenience constructor from `0`/`1` literals.
    pub fn from_bits(alphabet: &[&str], delta: &[&[&[u8]]], sigma: &[u8], tau: &[u8]) -> Result<Self> {
        Self::new(
            alphabet.iter().copied(),
            delta.iter().map(|rows| BoolRel::from_rows(rows)).collect(),
            BoolVec::from_bits(sigma),
            BoolVec::from_bits(tau),
        )
    }

    pub fn num_states(&self) -> usize {
        self.sigma.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn delta(&self, x: usize) -> &BoolRel {
        &self.delta[x]
    }

    pub fn deltas(&self) -> &[BoolRel] {
        &self.delta
    }

    pub fn sigma(&self) -> &BoolVec {
        &self.sigma
    }

    pub fn tau(&self) -> &BoolVec {
        &self.tau
    }

    pub fn with_sigma(&self, sigma: BoolVec) -> Result<Self> {
        Self::new(self.alphabet.clone(), self.delta.clone(), sigma, self.tau.clone())
    }

    pub fn with_tau(&self, tau: BoolVec) -> Result<Self> {
        Self::new(self.alphabet.clone(), self.delta.clone(), self.sigma.clone(), tau)
    }

    pub fn symbol_index(&self, name: &str) -> Result<usize> {
        self.alphabet.iter().position(|s| s == name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn same_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.alphabet.clone(), other.alphabet.clone()))
        }
    }

    /// Parses a word: whitespace-separated symbols, or one symbol per character
    /// when the text has no whitespace. `ε` and the empty string give the empty word.
    pub fn word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let idx = if text.contains(char::is_whitespace) {
            text.split_whitespace().map(|s| self.symbol_index(s)).collect::<Result<_>>()?
        } else {
            let mut buf = [0u8; 4];
            text.chars().map(|c| self.symbol_index(c.encode_utf8(&mut buf))).collect::<Result<_>>()?
        };
        Ok(Word(idx))
    }

    pub fn format_word(&self, u: &Word) -> String {
        format_word(&self.alphabet, u)
    }

    fn check_word(&self, u: &Word) -> Result<()> {
        match u.0.iter().find(|&&x| x >= self.alphabet.len()) {
            Some(x) => Err(Error::UnknownSymbol(format!("#{x}"))),
            None => Ok(()),
        }
    }

    /// `δ_u`, with `δ_ε` the identity.
    pub fn delta_word(&self, u: &Word) -> Result<BoolRel> {
        self.check_word(u)?;
        let mut r = BoolRel::identity(self.num_states());
        for &x in &u.0 {
            r = r.compose(&self.delta[x])?;
        }
        Ok(r)
    }

    /// `σ_u = σ∘δ_u`.
    pub fn sigma_u(&self, u: &Word) -> Result<BoolVec> {
        self.check_word(u)?;
        u.0.iter().try_fold(self.sigma.clone(), |v, &x| vec_rel(&v, &self.delta[x]))
    }

    /// `τ_u = δ_u∘τ`.
    pub fn tau_u(&self, u: &Word) -> Result<BoolVec> {
        self.check_word(u)?;
        u.0.iter().rev().try_fold(self.tau.clone(), |v, &x| rel_vec(&self.delta[x], &v))
    }

    pub fn accepts(&self, u: &Word) -> Result<bool> {
        self.sigma_u(u)?.scalar(&self.tau)
    }

    /// All accepted words of length at most `maxlen`.
    pub fn bounded_language(&self, maxlen: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut frontier = vec![(Word::empty(), self.sigma.clone())];
        for len in 0..=maxlen {
            for (u, s) in &frontier {
                if s.scalar(&self.tau).expect("same length") {
                    out.insert(u.clone());
                }
            }
            if len == maxlen {
                break;
            }
            frontier = frontier
                .iter()
                .filter(|(_, s)| !s.is_zero())
                .flat_map(|(u, s)| {
                    (0..self.alphabet.len()).map(move |x| (u.push(x), vec_rel(s, &self.delta[x]).expect("square")))
                })
                .collect();
        }
        out
    }

    /// The automaton with every transition inverted and `σ`, `τ` swapped.
    pub fn reverse(&self) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            delta: self.delta.iter().map(BoolRel::inverse).collect(),
            sigma: self.tau.clone(),
            tau: self.sigma.clone(),
        }
    }

    /// The factor automaton over the classes of `e`.
    pub fn factor(&self, e: &Partition) -> Result<Self> {
        if e.len() != self.num_states() {
            return Err(Error::SizeMismatch { expected: self.num_states(), actual: e.len() });
        }
        let er = e.to_relation();
        let reps: Vec<usize> = e.classes().iter().map(|c| c[0]).collect();
        let m = reps.len();
        let mut delta = Vec::with_capacity(self.delta.len());
        for d in &self.delta {
            let ede = er.compose(d)?.compose(&er)?;
            let mut q = BoolRel::empty(m, m);
            for (c1, &a1) in reps.iter().enumerate() {
                for (c2, &a2) in reps.iter().enumerate() {
                    q.set(c1, c2, ede.get(a1, a2));
                }
            }
            delta.push(q);
        }
        let se = vec_rel(&self.sigma, &er)?;
        let et = rel_vec(&er, &self.tau)?;
        let sigma = BoolVec::from_indices(m, (0..m).filter(|&c| se.get(reps[c])));
        let tau = BoolVec::from_indices(m, (0..m).filter(|&c| et.get(reps[c])));
        Self::new(self.alphabet.clone(), delta, sigma, tau)
    }

    /// Restriction to the states in `keep`, renumbered in increasing order.
    pub fn subautomaton(&self, keep: &BoolVec) -> Result<Self> {
        if keep.len() != self.num_states() {
            return Err(Error::SizeMismatch { expected: self.num_states(), actual: keep.len() });
        }
        let states: Vec<usize> = keep.iter_ones().collect();
        if states.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        let m = states.len();
        let delta = self
            .delta
            .iter()
            .map(|d| {
                let mut q = BoolRel::empty(m, m);
                for (i, &a) in states.iter().enumerate() {
                    for (j, &b) in states.iter().enumerate() {
                        q.set(i, j, d.get(a, b));
                    }
                }
                q
            })
            .collect();
        let restrict = |v: &BoolVec| BoolVec::from_indices(m, (0..m).filter(|&i| v.get(states[i])));
        Self::new(self.alphabet.clone(), delta, restrict(&self.sigma), restrict(&self.tau))
    }

    /// The same automaton with state `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.num_states();
        if perm.len() != n {
            return Err(Error::SizeMismatch { expected: n, actual: perm.len() });
        }
        if perm.iter().any(|&q| q >= n) || !crate::relcalc::is_surjective(&BoolRel::from_function(n, perm)) {
            return Err(Error::InvalidAutomaton(format!("{perm:?} is not a permutation")));
        }
        let p = BoolRel::from_function(n, perm);
        let pi = p.inverse();
        let delta = self.delta.iter().map(|d| pi.compose(d)?.compose(&p)).collect::<Result<Vec<_>>>()?;
        Self::new(self.alphabet.clone(), delta, vec_rel(&self.sigma, &p)?, rel_vec(&pi, &self.tau)?)
    }
}

pub(crate) fn format_word(alphabet: &[String], u: &Word) -> String {
    if u.is_empty() {
        return "ε".to_string();
    }
    let sep = if alphabet.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
    u.0.iter().map(|&x| alphabet[x].as_str()).collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn delta_word_of_empty_word_is_identity() {
        let (a, _) = samples::forward_pair();
        assert_eq!(a.delta_word(&Word::empty()).unwrap(), BoolRel::identity(3));
    }

    #[test]
    fn delta_word_is_product_of_letters() {
        let (a, _) = samples::forward_pair();
        let xy = a.word("xy").unwrap();
        let expected = BoolRel::from_rows(&[&[1, 1, 1], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(a.delta_word(&xy).unwrap(), expected);
    }

    #[test]
    fn unknown_symbol_is_named() {
        let (a, _) = samples::forward_pair();
        assert_eq!(a.word("xz"), Err(Error::UnknownSymbol("z".into())));
        assert!(a.delta_word(&Word(vec![5])).is_err());
    }

    #[test]
    fn tau_u_and_sigma_u_on_weak_pair() {
        let (a, b) = samples::weak_pair();
        assert_eq!(a.tau_u(&Word::empty()).unwrap(), *a.tau());
        assert_eq!(a.tau_u(&a.word("x").unwrap()).unwrap(), BoolVec::from_bits(&[0, 0, 0, 0]));
        assert_eq!(b.sigma_u(&b.word("x").unwrap()).unwrap(), BoolVec::from_bits(&[1, 0]));
    }

    #[test]
    fn incremental_identities() {
        let (a, _) = samples::forward_pair();
        let u = a.word("yxy").unwrap();
        for x in 0..2 {
            let ux = u.push(x);
            assert_eq!(a.sigma_u(&ux).unwrap(), vec_rel(&a.sigma_u(&u).unwrap(), a.delta(x)).unwrap());
            let xu = Word(vec![x]).concat(&u);
            assert_eq!(a.tau_u(&xu).unwrap(), rel_vec(a.delta(x), &a.tau_u(&u).unwrap()).unwrap());
        }
    }

    #[test]
    fn language_pair_accepts_only_x() {
        let (a, b) = samples::language_pair();
        let x = a.word("x").unwrap();
        for m in [1, 4, 6] {
            let expected: BTreeSet<Word> = [x.clone()].into();
            assert_eq!(a.bounded_language(m), expected);
            assert_eq!(b.bounded_language(m), expected);
        }
    }

    #[test]
    fn unreachable_terminals_give_empty_language() {
        let a = Nfa::from_bits(&["x"], &[&[&[0, 0], &[0, 0]]], &[1, 0], &[0, 1]).unwrap();
        assert!(a.bounded_language(5).is_empty());
    }

    #[test]
    fn shifted_weak_pair_accepts_only_empty_word() {
        let (a, b) = samples::weak_pair_shifted_initial();
        let eps: BTreeSet<Word> = [Word::empty()].into();
        assert_eq!(a.bounded_language(6), eps);
        assert_eq!(b.bounded_language(6), eps);
    }

    #[test]
    fn bounded_language_is_length_then_lex() {
        let a = Nfa::from_bits(&["x", "y"], &[&[&[1]], &[&[1]]], &[1], &[1]).unwrap();
        let words: Vec<String> = a.bounded_language(2).iter().map(|u| a.format_word(u)).collect();
        assert_eq!(words, ["ε", "x", "y", "xx", "xy", "yx", "yy"]);
    }

    #[test]
    fn reverse_is_involution() {
        let (a, _) = samples::forward_pair();
        assert_eq!(a.reverse().reverse(), a);
        let (_, b) = samples::language_pair();
        let rb = b.reverse();
        assert_eq!(*rb.delta(0), BoolRel::from_rows(&[&[0, 0], &[1, 0]]));
        assert_eq!(*rb.sigma(), BoolVec::from_bits(&[0, 1]));
        assert_eq!(*rb.tau(), BoolVec::from_bits(&[1, 0]));
    }

    #[test]
    fn factor_by_identity_is_isomorphic() {
        let (_, b) = samples::forward_pair();
        let f = b.factor(&Partition::identity(5)).unwrap();
        assert_eq!(find_isomorphism(&b, &f).unwrap(), Some((0..5).collect()));
    }

    #[test]
    fn factor_weak_pair_keeps_language() {
        let (a, _) = samples::weak_pair();
        let e = Partition::from_class_ids(&[0, 0, 1, 0]);
        let f = a.factor(&e).unwrap();
        assert_eq!(f.num_states(), 2);
        assert_eq!(f.bounded_language(6), a.bounded_language(6));
        assert!(a.factor(&Partition::identity(3)).is_err());
    }

    #[test]
    fn subautomaton_all_and_none() {
        let (a, _) = samples::forward_pair();
        assert_eq!(a.subautomaton(&BoolVec::ones(3)).unwrap(), a);
        assert_eq!(a.subautomaton(&BoolVec::zeros(3)), Err(Error::EmptyKeepSet));
        let s = a.subautomaton(&BoolVec::from_bits(&[1, 0, 1])).unwrap();
        assert_eq!(*s.delta(0), BoolRel::from_rows(&[&[1, 0], &[1, 0]]));
    }

    #[test]
    fn relabel_round_trip() {
        let (_, b) = samples::forward_pair();
        let perm = [3, 0, 4, 1, 2];
        let r = b.relabel(&perm).unwrap();
        let mut inv = [0; 5];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert_eq!(r.relabel(&inv).unwrap(), b);
        assert!(is_isomorphism(&b, &r, &perm));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let d = BoolRel::identity(2);
        let v = BoolVec::zeros(2);
        assert!(Nfa::new(Vec::<String>::new(), vec![], v.clone(), v.clone()).is_err());
        assert!(Nfa::new(["x", "x"], vec![d.clone(), d.clone()], v.clone(), v.clone()).is_err());
        assert!(Nfa::new(["x"], vec![d.clone()], v.clone(), BoolVec::zeros(3)).is_err());
        assert!(Nfa::new(["x"], vec![BoolRel::identity(3)], v.clone(), v.clone()).is_err());
        assert!(Nfa::new(["a b"], vec![d], v.clone(), v).is_err());
    }
}
