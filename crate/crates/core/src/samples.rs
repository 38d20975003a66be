//! Small hand-written automata with known bisimulation behaviour, shared by
//! tests, the self-test command and the acceptance suite.

use crate::automaton::Nfa;
use crate::relcalc::BoolRel;

fn build(alphabet: &[&str], delta: &[&[&[u8]]], sigma: &[u8], tau: &[u8]) -> Nfa {
    Nfa::from_bits(alphabet, delta, sigma, tau).expect("sample automata are well formed")
}

/// A 3-state and a 5-state automaton related by a uniform forward bisimulation.
pub fn forward_pair() -> (Nfa, Nfa) {
    let a = build(
        &["x", "y"],
        &[&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 0]], &[&[1, 1, 0], &[0, 0, 1], &[0, 0, 1]]],
        &[1, 0, 0],
        &[0, 0, 1],
    );
    let b = build(
        &["x", "y"],
        &[
            &[&[1, 1, 0, 1, 0], &[1, 1, 0, 1, 0], &[1, 1, 0, 0, 0], &[0, 0, 1, 1, 1], &[1, 1, 0, 0, 0]],
            &[&[1, 1, 0, 1, 0], &[1, 1, 0, 1, 0], &[0, 0, 1, 0, 1], &[0, 0, 1, 0, 1], &[0, 0, 1, 0, 1]],
        ],
        &[1, 1, 0, 0, 0],
        &[0, 0, 1, 0, 1],
    );
    (a, b)
}

/// The first two relations of the forward fixpoint on [`forward_pair`].
pub fn forward_pair_trace() -> (BoolRel, BoolRel) {
    (
        BoolRel::from_rows(&[&[1, 1, 0, 1, 0], &[1, 1, 0, 1, 0], &[0, 0, 1, 0, 1]]),
        BoolRel::from_rows(&[&[1, 1, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 1]]),
    )
}

/// A pair with a backward-forward bisimulation but no forward bisimulation.
pub fn backward_forward_pair() -> (Nfa, Nfa) {
    let a = build(&["x", "y"], &[&[&[1, 0], &[1, 1]], &[&[1, 0], &[1, 0]]], &[1, 0], &[0, 1]);
    let b = build(
        &["x", "y"],
        &[&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]], &[&[1, 0, 1], &[1, 0, 0], &[0, 0, 0]]],
        &[1, 0, 1],
        &[0, 1, 0],
    );
    (a, b)
}

/// A backward-forward bisimulation of [`backward_forward_pair`] that is not
/// partial uniform. It is not the greatest one; see
/// [`backward_forward_greatest`].
pub fn backward_forward_relation() -> BoolRel {
    BoolRel::from_rows(&[&[1, 0, 1], &[1, 1, 0]])
}

/// The greatest backward-forward bisimulation of [`backward_forward_pair`].
pub fn backward_forward_greatest() -> BoolRel {
    BoolRel::from_rows(&[&[1, 0, 1], &[1, 1, 1]])
}

/// Two automata recognizing `{x}` that are not forward bisimulation equivalent.
pub fn language_pair() -> (Nfa, Nfa) {
    let a = build(&["x"], &[&[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]]], &[0, 1, 0], &[0, 0, 1]);
    let b = build(&["x"], &[&[&[0, 1], &[0, 0]]], &[1, 0], &[0, 1]);
    (a, b)
}

/// Weak forward bisimulation equivalent, not forward bisimulation equivalent.
pub fn weak_pair() -> (Nfa, Nfa) {
    let a =
        build(&["x"], &[&[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0]]], &[0, 1, 0, 0], &[0, 0, 1, 0]);
    let b = build(&["x"], &[&[&[1, 0], &[1, 0]]], &[1, 0], &[0, 1]);
    (a, b)
}

/// The greatest weak forward bisimulation of [`weak_pair`].
pub fn weak_pair_relation() -> BoolRel {
    BoolRel::from_rows(&[&[1, 0], &[1, 0], &[0, 1], &[1, 0]])
}

/// [`weak_pair`] with initial states moved so both accept `{ε}` but the pair
/// is no longer weak forward bisimulation equivalent.
pub fn weak_pair_shifted_initial() -> (Nfa, Nfa) {
    let (a, b) = weak_pair();
    (
        a.with_sigma(crate::relcalc::BoolVec::from_bits(&[0, 0, 1, 0])).unwrap(),
        b.with_sigma(crate::relcalc::BoolVec::from_bits(&[1, 1])).unwrap(),
    )
}

/// Every sample automaton with a short name, in a fixed order.
pub fn all() -> Vec<(&'static str, Nfa)> {
    let (fa, fb) = forward_pair();
    let (ba, bb) = backward_forward_pair();
    let (la, lb) = language_pair();
    let (wa, wb) = weak_pair();
    let (sa, sb) = weak_pair_shifted_initial();
    vec![
        ("forward-a", fa),
        ("forward-b", fb),
        ("backward-forward-a", ba),
        ("backward-forward-b", bb),
        ("language-a", la),
        ("language-b", lb),
        ("weak-a", wa),
        ("weak-b", wb),
        ("weak-shifted-a", sa),
        ("weak-shifted-b", sb),
    ]
}
