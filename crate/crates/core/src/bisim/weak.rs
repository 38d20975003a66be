use std::collections::{HashSet, VecDeque};

use super::check::{weak_forward_sim, Condition};
use super::{BisimKind, BisimReport};
use crate::automaton::Nfa;
use crate::error::Result;
use crate::relcalc::{arrow_right, biarrow, rel_vec, BoolRel, BoolVec, Partition};

/// `{(τ_u^A, τ_u^B) : u ∈ X*}` in breadth-first order from `(τ^A, τ^B)`,
/// following `τ_{xu} = δ_x∘τ_u` on both sides in lockstep.
pub fn reachable_terminal_pairs(a: &Nfa, b: &Nfa) -> Result<Vec<(BoolVec, BoolVec)>> {
    a.same_alphabet(b)?;
    let start = (a.tau().clone(), b.tau().clone());
    let mut seen = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some((ta, tb)) = queue.pop_front() {
        for (da, db) in a.deltas().iter().zip(b.deltas()) {
            let next = (rel_vec(da, &ta)?, rel_vec(db, &tb)?);
            if seen.insert(next.clone()) {
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}

/// `{(σ_u^A, σ_u^B) : u ∈ X*}`, found as the terminal pairs of the reversed automata.
pub fn reachable_initial_pairs(a: &Nfa, b: &Nfa) -> Result<Vec<(BoolVec, BoolVec)>> {
    reachable_terminal_pairs(&a.reverse(), &b.reverse())
}

/// The distinct sets `τ_u` of one automaton, breadth-first from `τ`.
pub fn reachable_terminal_sets(a: &Nfa) -> Vec<BoolVec> {
    let mut seen = HashSet::from([a.tau().clone()]);
    let mut order = vec![a.tau().clone()];
    let mut i = 0;
    while i < order.len() {
        for d in a.deltas() {
            let next = rel_vec(d, &order[i]).expect("square");
            if seen.insert(next.clone()) {
                order.push(next);
            }
        }
        i += 1;
    }
    order
}

fn intersect_all(
    n: usize,
    m: usize,
    pairs: &[(BoolVec, BoolVec)],
    f: impl Fn(&BoolVec, &BoolVec) -> BoolRel,
) -> BoolRel {
    pairs.iter().fold(BoolRel::full(n, m), |acc, (x, y)| acc.intersect(&f(x, y)).expect("same shape"))
}

fn initial_conditions(a: &Nfa, b: &Nfa, phi: &BoolRel, both: bool) -> Vec<Condition> {
    let keep = |c: Vec<Condition>| c.into_iter().filter(|c| c.name.starts_with("initial-"));
    let mut out: Vec<Condition> = keep(weak_forward_sim(a, b, phi, &[], "forward")).collect();
    if both {
        out.extend(keep(weak_forward_sim(b, a, &phi.inverse(), &[], "backward")));
    }
    out
}

/// `λ = ⋂_u (τ_u^A → τ_u^B)`, accepted iff `σ^A ⊆ σ^B∘λ⁻¹`.
pub fn greatest_weak_forward_sim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    let pairs = reachable_terminal_pairs(a, b)?;
    let lambda = intersect_all(a.num_states(), b.num_states(), &pairs, arrow_right);
    let conditions = initial_conditions(a, b, &lambda, false);
    Ok(BisimReport::decide(BisimKind::WeakForwardSim, lambda, pairs.len(), vec![], conditions))
}

/// `μ = ⋂_u (τ_u^A ↔ τ_u^B)`, accepted iff both initial conditions hold.
pub fn greatest_weak_forward_bisim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    let pairs = reachable_terminal_pairs(a, b)?;
    let mu = intersect_all(a.num_states(), b.num_states(), &pairs, biarrow);
    let conditions = initial_conditions(a, b, &mu, true);
    Ok(BisimReport::decide(BisimKind::WeakForwardBisim, mu, pairs.len(), vec![], conditions))
}

pub fn greatest_weak_backward_sim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    Ok(greatest_weak_forward_sim(&a.reverse(), &b.reverse())?.dualized(BisimKind::WeakBackwardSim))
}

pub fn greatest_weak_backward_bisim(a: &Nfa, b: &Nfa) -> Result<BisimReport> {
    Ok(greatest_weak_forward_bisim(&a.reverse(), &b.reverse())?.dualized(BisimKind::WeakBackwardBisim))
}

/// The greatest weak forward bisimulation equivalence on `a`: states are
/// related iff they lie in exactly the same sets `τ_u`.
pub fn wfb_equivalence_bound(a: &Nfa) -> Partition {
    let n = a.num_states();
    let sets: Vec<(BoolVec, BoolVec)> = reachable_terminal_sets(a).into_iter().map(|t| (t.clone(), t)).collect();
    Partition::from_relation(&intersect_all(n, n, &sets, biarrow)).expect("intersection of equivalences")
}

/// The greatest weak backward bisimulation equivalence on `a`.
pub fn wbb_equivalence_bound(a: &Nfa) -> Partition {
    wfb_equivalence_bound(&a.reverse())
}
