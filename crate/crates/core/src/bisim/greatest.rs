use super::check::{backward_sim, forward_sim, Condition};
use super::{BisimKind, BisimReport};
use crate::automaton::Nfa;
use crate::error::{Error, Result};
use crate::relcalc::{arrow_left, arrow_right, biarrow, residual_left, residual_right, BoolRel, Partition};

fn comp(l: &BoolRel, r: &BoolRel) -> BoolRel {
    l.compose(r).expect("conformable by construction")
}

fn meet(l: &BoolRel, r: &BoolRel) -> BoolRel {
    l.intersect(r).expect("same shape by construction")
}

/// Iterates `step` from `phi1` until it stabilizes, then accepts the fixpoint
/// iff every condition returned by `accept` holds.
///
/// An empty `φ₁` fails at once with every acceptance condition listed.
fn fixpoint(
    kind: BisimKind,
    phi1: BoolRel,
    step: impl Fn(&BoolRel) -> BoolRel,
    accept: impl Fn(&BoolRel) -> Vec<Condition>,
) -> BisimReport {
    if phi1.is_empty() {
        let violated = accept(&phi1).into_iter().map(|c| Condition { holds: false, ..c }).collect();
        return BisimReport::decide(kind, phi1.clone(), 0, vec![phi1], violated);
    }
    let mut trace = vec![phi1];
    let mut iterations = 0;
    loop {
        let cur = trace.last().unwrap();
        let next = step(cur);
        iterations += 1;
        debug_assert!(next.is_subset_of(cur).unwrap());
        if next == *cur {
            break;
        }
        trace.push(next);
    }
    let phi = trace.last().unwrap().clone();
    let conditions = accept(&phi);
    BisimReport::decide(kind, phi, iterations, trace, conditions)
}

fn only(conditions: Vec<Condition>, names: &[&str]) -> Vec<Condition> {
    conditions.into_iter().filter(|c| names.contains(&c.name.as_str())).collect()
}

/// The greatest forward bisimulation from `a` to `b`, when one exists.
pub fn greatest_forward_bisim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    a.same_alphabet(b)?;
    let phi1 = biarrow(a.tau(), b.tau());
    let step = |phi: &BoolRel| {
        let inv = phi.inverse();
        let mut next = phi.clone();
        for (da, db) in a.deltas().iter().zip(b.deltas()) {
            let back = residual_left(&comp(db, &inv), da).unwrap().inverse();
            let fwd = residual_left(&comp(da, phi), db).unwrap();
            next = meet(&next, &meet(&back, &fwd));
        }
        next
    };
    let accept = |phi: &BoolRel| {
        let mut c = only(forward_sim(a, b, phi, "forward"), &["initial-forward"]);
        c.extend(only(forward_sim(b, a, &phi.inverse(), "backward"), &["initial-backward"]));
        c
    };
    Ok(fixpoint(BisimKind::ForwardBisim, phi1, step, accept))
}

/// The greatest backward-forward bisimulation from `a` to `b`, when one exists.
pub fn greatest_backward_forward_bisim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    a.same_alphabet(b)?;
    let phi1 = meet(&arrow_right(a.sigma(), b.sigma()), &arrow_left(a.tau(), b.tau()));
    let step = |phi: &BoolRel| {
        let mut next = phi.clone();
        for (da, db) in a.deltas().iter().zip(b.deltas()) {
            let l = residual_left(&comp(da, phi), db).unwrap();
            let r = residual_right(&comp(phi, db), da).unwrap();
            next = meet(&next, &meet(&l, &r));
        }
        next
    };
    let accept = |phi: &BoolRel| {
        let mut c = only(backward_sim(a, b, phi, "forward"), &["terminal-forward"]);
        c.extend(only(forward_sim(b, a, &phi.inverse(), "backward"), &["initial-backward"]));
        c
    };
    Ok(fixpoint(BisimKind::BackwardForwardBisim, phi1, step, accept))
}

/// Computed as the greatest forward bisimulation between the reversed automata.
pub fn greatest_backward_bisim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    Ok(greatest_forward_bisim(&a.reverse(), &b.reverse())?.dualized(BisimKind::BackwardBisim))
}

/// Computed as the greatest backward-forward bisimulation between the reversed automata.
pub fn greatest_forward_backward_bisim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    Ok(greatest_backward_forward_bisim(&a.reverse(), &b.reverse())?.dualized(BisimKind::ForwardBackwardBisim))
}

/// Dispatches to the greatest-relation algorithm for `kind`.
pub fn greatest(kind: BisimKind, a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    use BisimKind::*;
    match kind {
        ForwardBisim => greatest_forward_bisim(a, b),
        BackwardBisim => greatest_backward_bisim(a, b),
        BackwardForwardBisim => greatest_backward_forward_bisim(a, b),
        ForwardBackwardBisim => greatest_forward_backward_bisim(a, b),
        WeakForwardSim => super::greatest_weak_forward_sim(a, b),
        WeakBackwardSim => super::greatest_weak_backward_sim(a, b),
        WeakForwardBisim => super::greatest_weak_forward_bisim(a, b),
        WeakBackwardBisim => super::greatest_weak_backward_bisim(a, b),
        ForwardSim | BackwardSim => Err(Error::Unsupported(format!("greatest {kind} relation"))),
    }
}

pub(crate) fn equivalence_from(report: &BisimReport) -> Result<Partition> {
    let r = report.relation().ok_or_else(|| {
        Error::CrossCheck(format!("no greatest {} relation of an automaton with itself", report.kind))
    })?;
    Partition::from_relation(r).map_err(|_| {
        Error::CrossCheck(format!("greatest {} relation on one automaton is not an equivalence", report.kind))
    })
}

/// The greatest forward bisimulation equivalence on `a`.
pub fn greatest_fb_equivalence(a: &Nfa) -> Result<Partition> {
    equivalence_from(&greatest_forward_bisim(a, a)?)
}

/// The greatest backward bisimulation equivalence on `a`.
pub fn greatest_bb_equivalence(a: &Nfa) -> Result<Partition> {
    equivalence_from(&greatest_backward_bisim(a, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::random_nfa;
    use crate::bisim::check;
    use crate::relcalc::all_partitions;
    use crate::samples;

    /// Union of every nonempty relation passing the definition checker.
    fn exhaustive_greatest(kind: BisimKind, a: &Nfa, b: &Nfa) -> Option<BoolRel> {
        let (n, m) = (a.num_states(), b.num_states());
        let mut acc: Option<BoolRel> = None;
        for bits in 1u32..(1 << (n * m)) {
            let r = BoolRel::from_pairs(n, m, (0..n * m).filter(|i| bits >> i & 1 == 1).map(|i| (i / m, i % m)));
            if check(kind, a, b, &r).unwrap().holds() {
                acc = Some(match acc {
                    Some(x) => x.union(&r).unwrap(),
                    None => r,
                });
            }
        }
        acc
    }

    #[test]
    fn forward_example_trace() {
        let (a, b) = samples::forward_pair();
        let (phi1, phi2) = samples::forward_pair_trace();
        let r = greatest_forward_bisim(&a, &b).unwrap();
        assert_eq!(r.trace, vec![phi1.clone(), phi2.clone()]);
        assert_eq!(r.iterations, 2);
        assert_eq!(r.relation(), Some(&phi2));
        assert!(phi2.is_subset_of(&phi1).unwrap());
    }

    #[test]
    fn backward_forward_example() {
        let (a, b) = samples::backward_forward_pair();
        let r = greatest_backward_forward_bisim(&a, &b).unwrap();
        let phi = r.relation().unwrap();
        assert_eq!(Some(phi), exhaustive_greatest(BisimKind::BackwardForwardBisim, &a, &b).as_ref());
        assert_eq!(*phi, samples::backward_forward_greatest());
        let smaller = samples::backward_forward_relation();
        assert!(check(BisimKind::BackwardForwardBisim, &a, &b, &smaller).unwrap().holds());
        assert!(smaller.is_subset_of(phi).unwrap());
        let f = greatest_forward_bisim(&a, &b).unwrap();
        assert!(!f.exists());
        assert!(!f.failure().unwrap().is_empty());
    }

    #[test]
    fn self_relation_is_equivalence() {
        for seed in 0..30 {
            let a = random_nfa(5, &["x", "y"], 0.3, seed).unwrap();
            let r = greatest_forward_bisim(&a, &a).unwrap();
            assert!(r.relation().unwrap().is_equivalence());
            let bfb = greatest_backward_forward_bisim(&a, &a).unwrap();
            assert!(BoolRel::identity(5).is_subset_of(bfb.relation().unwrap()).unwrap());
        }
    }

    #[test]
    fn matches_exhaustive_oracle() {
        let mut nonempty = [0usize; 4];
        for seed in 0..120u64 {
            let (a, b) = if seed % 3 == 0 {
                let a = random_nfa(3, &["x", "y"], 0.4, seed).unwrap();
                let b = a.relabel(&[1, 2, 0]).unwrap();
                (a, b)
            } else {
                let n = 2 + (seed % 2) as usize;
                let a = random_nfa(n, &["x", "y"], 0.4, seed).unwrap();
                (a, random_nfa(5 - n, &["x", "y"], 0.4, seed + 7000).unwrap())
            };
            for (i, kind) in [
                BisimKind::ForwardBisim,
                BisimKind::BackwardForwardBisim,
                BisimKind::BackwardBisim,
                BisimKind::ForwardBackwardBisim,
            ]
            .into_iter()
            .enumerate()
            {
                let got = greatest(kind, &a, &b).unwrap();
                let expected = exhaustive_greatest(kind, &a, &b);
                assert_eq!(got.nonempty_relation(), expected.as_ref(), "{kind} seed {seed}");
                nonempty[i] += expected.is_some() as usize;
            }
        }
        assert!(nonempty.iter().all(|&c| c > 0), "{nonempty:?}");
    }

    #[test]
    fn duality_with_reversal() {
        let (a, b) = samples::forward_pair();
        let bb = greatest_backward_bisim(&a.reverse(), &b.reverse()).unwrap();
        assert_eq!(bb.relation(), greatest_forward_bisim(&a, &b).unwrap().relation());
    }

    #[test]
    fn empty_first_relation_fails_immediately() {
        // every state of a terminal, none of b: the biarrow is empty
        let a = Nfa::from_bits(&["x"], &[&[&[1]]], &[1], &[1]).unwrap();
        let b = Nfa::from_bits(&["x"], &[&[&[1]]], &[1], &[0]).unwrap();
        let r = greatest_forward_bisim(&a, &b).unwrap();
        assert_eq!(r.iterations, 0);
        assert_eq!(r.failure().unwrap(), ["initial-forward", "initial-backward"]);
    }

    #[test]
    fn vacuous_initial_conditions_accept_empty_relation() {
        // a loops on its terminal state, b has no transitions; nothing survives the step
        let a = Nfa::from_bits(&["x"], &[&[&[1]]], &[0], &[1]).unwrap();
        let b = Nfa::from_bits(&["x"], &[&[&[0]]], &[0], &[1]).unwrap();
        let r = greatest_forward_bisim(&a, &b).unwrap();
        assert!(r.exists());
        assert!(r.relation_is_empty);
        assert_eq!(r.iterations, 2);
    }

    #[test]
    fn language_pair_equivalences_are_identities() {
        let (a, b) = samples::language_pair();
        assert_eq!(greatest_fb_equivalence(&a).unwrap(), Partition::identity(3));
        assert_eq!(greatest_fb_equivalence(&b).unwrap(), Partition::identity(2));
    }

    #[test]
    fn single_state_equivalence() {
        let a = Nfa::from_bits(&["x"], &[&[&[1]]], &[1], &[0]).unwrap();
        assert_eq!(greatest_fb_equivalence(&a).unwrap(), Partition::single_class(1));
    }

    fn is_fb_equivalence(a: &Nfa, e: &Partition) -> bool {
        let r = e.to_relation();
        a.deltas().iter().all(|d| r.compose(d).unwrap().is_subset_of(&d.compose(&r).unwrap()).unwrap())
            && crate::relcalc::rel_vec(&r, a.tau()).unwrap() == *a.tau()
    }

    #[test]
    fn forward_b_equivalence_matches_partition_search() {
        let (_, b) = samples::forward_pair();
        let got = greatest_fb_equivalence(&b).unwrap();
        let candidates: Vec<Partition> = all_partitions(5).into_iter().filter(|e| is_fb_equivalence(&b, e)).collect();
        let greatest = candidates.iter().find(|e| candidates.iter().all(|f| f.refines(e))).unwrap();
        assert_eq!(&got, greatest);
        assert_eq!(got.num_classes(), 3);
    }

    #[test]
    fn backward_equivalence_of_reversed_forward() {
        let (_, b) = samples::forward_pair();
        assert_eq!(greatest_bb_equivalence(&b.reverse()).unwrap(), greatest_fb_equivalence(&b).unwrap());
    }
}
