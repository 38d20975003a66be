use std::collections::HashMap;

use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::relcalc::{rel_vec, vec_rel, BoolRel, BoolVec};

/// Breadth-first subset construction from `start`. States are numbered in
/// discovery order, so the start state is 0.
fn subset_bfs(
    a: &Nfa,
    start: BoolVec,
    step: impl Fn(&BoolVec, usize) -> BoolVec,
    is_final: impl Fn(&BoolVec) -> bool,
) -> Dfa {
    let k = a.alphabet().len();
    let mut index = HashMap::from([(start.clone(), 0usize)]);
    let mut subsets = vec![start];
    let mut next: Vec<Vec<usize>> = Vec::new();
    while next.len() < subsets.len() {
        let s = next.len();
        let row = (0..k)
            .map(|x| {
                let t = step(&subsets[s], x);
                *index.entry(t.clone()).or_insert_with(|| {
                    subsets.push(t);
                    subsets.len() - 1
                })
            })
            .collect();
        next.push(row);
    }
    let finals = subsets.iter().map(&is_final).collect();
    Dfa::new(a.alphabet().to_vec(), next, 0, finals, subsets).expect("subset construction is total")
}

/// The accessible subset automaton over the sets `σ_u`.
pub fn nerode(a: &Nfa) -> Dfa {
    subset_bfs(
        a,
        a.sigma().clone(),
        |s, x| vec_rel(s, a.delta(x)).expect("square"),
        |s| s.scalar(a.tau()).expect("same length"),
    )
}

/// The accessible subset automaton over the sets `τ_u`, moving from `τ_u` to
/// `τ_{xu}` on `x`.
pub fn reverse_nerode(a: &Nfa) -> Dfa {
    subset_bfs(
        a,
        a.tau().clone(),
        |t, x| rel_vec(a.delta(x), t).expect("square"),
        |t| a.sigma().scalar(t).expect("same length"),
    )
}

/// True when `f` maps `d1` onto `d2` preserving the start state, every
/// transition and every final flag.
pub fn is_dfa_isomorphism(d1: &Dfa, d2: &Dfa, f: &[usize]) -> bool {
    let m = d1.num_states();
    if d1.alphabet() != d2.alphabet() || d2.num_states() != m || f.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    if f.iter().any(|&q| q >= m || std::mem::replace(&mut seen[q], true)) {
        return false;
    }
    f[d1.start()] == d2.start()
        && (0..m).all(|s| {
            d1.is_final(s) == d2.is_final(f[s])
                && (0..d1.alphabet().len()).all(|x| f[d1.next(s, x)] == d2.next(f[s], x))
        })
}

/// The isomorphism between accessible deterministic automata, which is forced
/// by mapping start to start and following transitions.
pub fn dfa_isomorphic(d1: &Dfa, d2: &Dfa) -> Result<Option<Vec<usize>>> {
    if d1.alphabet() != d2.alphabet() {
        return Err(Error::AlphabetMismatch(d1.alphabet().to_vec(), d2.alphabet().to_vec()));
    }
    let m = d1.num_states();
    if d2.num_states() != m {
        return Ok(None);
    }
    let mut f = vec![usize::MAX; m];
    let mut g = vec![usize::MAX; m];
    let mut stack = vec![(d1.start(), d2.start())];
    while let Some((p, q)) = stack.pop() {
        match (f[p], g[q]) {
            (usize::MAX, usize::MAX) => {
                if d1.is_final(p) != d2.is_final(q) {
                    return Ok(None);
                }
                f[p] = q;
                g[q] = p;
                for x in 0..d1.alphabet().len() {
                    stack.push((d1.next(p, x), d2.next(q, x)));
                }
            }
            (fp, gq) if fp == q && gq == p => {}
            _ => return Ok(None),
        }
    }
    if f.contains(&usize::MAX) {
        return Ok(None);
    }
    Ok(Some(f))
}

/// The maps `τ_u^A ↦ φ⁻¹∘τ_u^A` and `τ_u^B ↦ φ∘τ_u^B` between the reverse
/// subset automata of `a` and `b`, as state index vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageMaps {
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

/// Builds the two maps induced by `φ` and returns them when they are mutually
/// inverse isomorphisms of the reverse subset automata.
pub fn reverse_nerode_maps(a: &Nfa, b: &Nfa, phi: &BoolRel) -> Result<Option<LanguageMaps>> {
    a.same_alphabet(b)?;
    let (ra, rb) = (reverse_nerode(a), reverse_nerode(b));
    let inv = phi.inverse();
    let image = |from: &Dfa, to: &Dfa, r: &BoolRel| -> Result<Option<Vec<usize>>> {
        let index: HashMap<&BoolVec, usize> = (0..to.num_states()).map(|s| (to.subset(s), s)).collect();
        let mut out = Vec::with_capacity(from.num_states());
        for s in 0..from.num_states() {
            match index.get(&rel_vec(r, from.subset(s))?) {
                Some(&t) => out.push(t),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    };
    let (Some(forward), Some(backward)) = (image(&ra, &rb, &inv)?, image(&rb, &ra, phi)?) else {
        return Ok(None);
    };
    let inverse_pair = forward.len() == backward.len()
        && (0..forward.len()).all(|s| backward[forward[s]] == s && forward[backward[s]] == s);
    if inverse_pair && is_dfa_isomorphism(&ra, &rb, &forward) && is_dfa_isomorphism(&rb, &ra, &backward) {
        Ok(Some(LanguageMaps { forward, backward }))
    } else {
        Ok(None)
    }
}
