use std::collections::HashMap;

use super::Nfa;
use crate::error::Result;

/// True when `f` is a bijection from the states of `a` onto those of `b`
/// preserving every transition, initial and terminal state in both directions.
pub fn is_isomorphism(a: &Nfa, b: &Nfa, f: &[usize]) -> bool {
    let n = a.num_states();
    if a.alphabet() != b.alphabet() || b.num_states() != n || f.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    if f.iter().any(|&q| q >= n || std::mem::replace(&mut seen[q], true)) {
        return false;
    }
    (0..n).all(|p| a.sigma().get(p) == b.sigma().get(f[p]) && a.tau().get(p) == b.tau().get(f[p]))
        && a.deltas()
            .iter()
            .zip(b.deltas())
            .all(|(da, db)| (0..n).all(|p| (0..n).all(|q| da.get(p, q) == db.get(f[p], f[q]))))
}

type Signature = (usize, Vec<(Vec<usize>, Vec<usize>)>);

/// Colour refinement run on both automata with a shared colour table, so equal
/// colours across the two mean the same structural class.
fn refine(a: &Nfa, b: &Nfa) -> (Vec<usize>, Vec<usize>) {
    let init =
        |m: &Nfa| -> Vec<(bool, bool)> { (0..m.num_states()).map(|p| (m.sigma().get(p), m.tau().get(p))).collect() };
    let mut table = HashMap::new();
    let number = |k: (bool, bool), table: &mut HashMap<(bool, bool), usize>| {
        let len = table.len();
        *table.entry(k).or_insert(len)
    };
    let mut ca: Vec<usize> = init(a).into_iter().map(|k| number(k, &mut table)).collect();
    let mut cb: Vec<usize> = init(b).into_iter().map(|k| number(k, &mut table)).collect();
    let mut count = table.len();
    loop {
        let sig = |m: &Nfa, c: &[usize], p: usize| -> Signature {
            let per_symbol = m
                .deltas()
                .iter()
                .map(|d| {
                    let mut out: Vec<usize> = d.row(p).iter_ones().map(|q| c[q]).collect();
                    let mut inc: Vec<usize> = d.column(p).iter_ones().map(|q| c[q]).collect();
                    out.sort_unstable();
                    inc.sort_unstable();
                    (out, inc)
                })
                .collect();
            (c[p], per_symbol)
        };
        let sa: Vec<Signature> = (0..a.num_states()).map(|p| sig(a, &ca, p)).collect();
        let sb: Vec<Signature> = (0..b.num_states()).map(|p| sig(b, &cb, p)).collect();
        let mut table: HashMap<Signature, usize> = HashMap::new();
        let mut next = |s: Signature| {
            let len = table.len();
            *table.entry(s).or_insert(len)
        };
        let na: Vec<usize> = sa.into_iter().map(&mut next).collect();
        let nb: Vec<usize> = sb.into_iter().map(&mut next).collect();
        let new_count = table.len();
        ca = na;
        cb = nb;
        if new_count == count {
            return (ca, cb);
        }
        count = new_count;
    }
}

/// Finds the isomorphism from `a` to `b` whose image sequence is
/// lexicographically least, if any exists.
pub fn find_isomorphism(a: &Nfa, b: &Nfa) -> Result<Option<Vec<usize>>> {
    a.same_alphabet(b)?;
    let n = a.num_states();
    if b.num_states() != n {
        return Ok(None);
    }
    let (ca, cb) = refine(a, b);
    let mut hist = HashMap::new();
    for &c in &ca {
        *hist.entry(c).or_insert(0i64) += 1;
    }
    for &c in &cb {
        *hist.entry(c).or_insert(0i64) -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return Ok(None);
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(assign(a, b, &ca, &cb, 0, &mut f, &mut used).then_some(f))
}

fn consistent(a: &Nfa, b: &Nfa, f: &[usize], p: usize, q: usize) -> bool {
    a.deltas().iter().zip(b.deltas()).all(|(da, db)| {
        da.get(p, p) == db.get(q, q)
            && (0..p).all(|r| da.get(p, r) == db.get(q, f[r]) && da.get(r, p) == db.get(f[r], q))
    })
}

fn assign(a: &Nfa, b: &Nfa, ca: &[usize], cb: &[usize], p: usize, f: &mut [usize], used: &mut [bool]) -> bool {
    if p == f.len() {
        return true;
    }
    for q in 0..f.len() {
        if used[q] || cb[q] != ca[p] || !consistent(a, b, f, p, q) {
            continue;
        }
        f[p] = q;
        used[q] = true;
        if assign(a, b, ca, cb, p + 1, f, used) {
            return true;
        }
        used[q] = false;
    }
    f[p] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::random_nfa;
    use crate::samples;

    fn brute_force_least(a: &Nfa, b: &Nfa) -> Option<Vec<usize>> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out.sort();
            out
        }
        perms(a.num_states()).into_iter().find(|f| is_isomorphism(a, b, f))
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let (a, b) = samples::forward_pair();
        assert_eq!(find_isomorphism(&a, &a).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(find_isomorphism(&b, &b).unwrap(), Some((0..5).collect()));
    }

    #[test]
    fn size_mismatch_gives_none() {
        let (a, b) = samples::language_pair();
        assert_eq!(find_isomorphism(&a, &b).unwrap(), None);
    }

    #[test]
    fn alphabet_mismatch_errors() {
        let (a, _) = samples::forward_pair();
        let (c, _) = samples::language_pair();
        assert!(find_isomorphism(&a, &c).is_err());
    }

    #[test]
    fn relabelled_copies_are_recovered() {
        for seed in 0..40 {
            let a = random_nfa(5, &["x", "y"], 0.3, seed).unwrap();
            let perm = [2, 4, 0, 1, 3];
            let b = a.relabel(&perm).unwrap();
            let f = find_isomorphism(&a, &b).unwrap().expect("relabelled copy");
            assert!(is_isomorphism(&a, &b, &f));
            assert_eq!(Some(f), brute_force_least(&a, &b));
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_pairs() {
        for seed in 0..150 {
            let a = random_nfa(4, &["x"], 0.4, seed).unwrap();
            let b = random_nfa(4, &["x"], 0.4, seed + 1000).unwrap();
            assert_eq!(find_isomorphism(&a, &b).unwrap(), brute_force_least(&a, &b), "seed {seed}");
        }
    }

    #[test]
    fn checker_rejects_non_bijections() {
        let (a, _) = samples::forward_pair();
        assert!(!is_isomorphism(&a, &a, &[0, 0, 2]));
        assert!(!is_isomorphism(&a, &a, &[0, 1]));
        assert!(!is_isomorphism(&a, &a, &[1, 0, 2]));
    }
}
