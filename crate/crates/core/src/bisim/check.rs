use std::fmt;

use super::{reachable_initial_pairs, reachable_terminal_pairs, BisimKind};
use crate::automaton::Nfa;
use crate::error::{Error, Result, Shape};
use crate::relcalc::{rel_vec, vec_rel, BoolRel, BoolVec};

/// One defining inclusion and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

impl Condition {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Self { name: name.into(), holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: BisimKind,
    pub conditions: Vec<Condition>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn violated(&self) -> Vec<&str> {
        self.conditions.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            writeln!(f, "{} {}", if c.holds { "ok  " } else { "FAIL" }, c.name)?;
        }
        write!(f, "{}: {}", self.kind, if self.holds() { "holds" } else { "does not hold" })
    }
}

fn sub(l: &BoolVec, r: &BoolVec) -> bool {
    l.is_subset_of(r).expect("conformable by construction")
}

fn subr(l: &BoolRel, r: &BoolRel) -> bool {
    l.is_subset_of(r).expect("conformable by construction")
}

fn comp(l: &BoolRel, r: &BoolRel) -> BoolRel {
    l.compose(r).expect("conformable by construction")
}

/// `φ` (from `a` to `b`) as a forward simulation. `dir` tags the condition names.
pub(crate) fn forward_sim(a: &Nfa, b: &Nfa, phi: &BoolRel, dir: &str) -> Vec<Condition> {
    let inv = phi.inverse();
    let mut out = vec![Condition::new(format!("initial-{dir}"), sub(a.sigma(), &vec_rel(b.sigma(), &inv).unwrap()))];
    for (x, name) in a.alphabet().iter().enumerate() {
        out.push(Condition::new(
            format!("transition-{name}-{dir}"),
            subr(&comp(&inv, a.delta(x)), &comp(b.delta(x), &inv)),
        ));
    }
    out.push(Condition::new(format!("terminal-{dir}"), sub(&rel_vec(&inv, a.tau()).unwrap(), b.tau())));
    out
}

/// `φ` (from `a` to `b`) as a backward simulation.
pub(crate) fn backward_sim(a: &Nfa, b: &Nfa, phi: &BoolRel, dir: &str) -> Vec<Condition> {
    let mut out = vec![Condition::new(format!("initial-{dir}"), sub(&vec_rel(a.sigma(), phi).unwrap(), b.sigma()))];
    for (x, name) in a.alphabet().iter().enumerate() {
        out.push(Condition::new(
            format!("transition-{name}-{dir}"),
            subr(&comp(a.delta(x), phi), &comp(phi, b.delta(x))),
        ));
    }
    out.push(Condition::new(format!("terminal-{dir}"), sub(a.tau(), &rel_vec(phi, b.tau()).unwrap())));
    out
}

pub(crate) fn weak_forward_sim(
    a: &Nfa,
    b: &Nfa,
    phi: &BoolRel,
    pairs: &[(BoolVec, BoolVec)],
    dir: &str,
) -> Vec<Condition> {
    let inv = phi.inverse();
    vec![
        Condition::new(format!("initial-{dir}"), sub(a.sigma(), &vec_rel(b.sigma(), &inv).unwrap())),
        Condition::new(
            format!("right-languages-{dir}"),
            pairs.iter().all(|(ta, tb)| sub(&rel_vec(&inv, ta).unwrap(), tb)),
        ),
    ]
}

pub(crate) fn weak_backward_sim(
    a: &Nfa,
    b: &Nfa,
    phi: &BoolRel,
    pairs: &[(BoolVec, BoolVec)],
    dir: &str,
) -> Vec<Condition> {
    vec![
        Condition::new(
            format!("left-languages-{dir}"),
            pairs.iter().all(|(sa, sb)| sub(&vec_rel(sa, phi).unwrap(), sb)),
        ),
        Condition::new(format!("terminal-{dir}"), sub(a.tau(), &rel_vec(phi, b.tau()).unwrap())),
    ]
}

fn swapped(pairs: &[(BoolVec, BoolVec)]) -> Vec<(BoolVec, BoolVec)> {
    pairs.iter().map(|(x, y)| (y.clone(), x.clone())).collect()
}

/// Evaluates every defining inclusion of `kind` for `φ` from `a` to `b`.
///
/// Conditions on `φ` are suffixed `-forward`, those on `φ⁻¹` `-backward`.
/// The weak kinds quantify over the reachable pairs of right (or left)
/// language sets, which covers every word.
pub fn check(kind: BisimKind, a: &Nfa, b: &Nfa, phi: &BoolRel) -> Result<CheckReport> {
    a.same_alphabet(b)?;
    if phi.rows() != a.num_states() || phi.cols() != b.num_states() {
        return Err(Error::DimensionMismatch {
            op: "check",
            left: phi.shape(),
            right: Shape { rows: a.num_states(), cols: b.num_states() },
        });
    }
    if phi.is_empty() {
        return Err(Error::EmptyRelation);
    }
    let inv = phi.inverse();
    use BisimKind::*;
    let conditions = match kind {
        ForwardSim => forward_sim(a, b, phi, "forward"),
        BackwardSim => backward_sim(a, b, phi, "forward"),
        ForwardBisim => [forward_sim(a, b, phi, "forward"), forward_sim(b, a, &inv, "backward")].concat(),
        BackwardBisim => [backward_sim(a, b, phi, "forward"), backward_sim(b, a, &inv, "backward")].concat(),
        BackwardForwardBisim => [backward_sim(a, b, phi, "forward"), forward_sim(b, a, &inv, "backward")].concat(),
        ForwardBackwardBisim => [forward_sim(a, b, phi, "forward"), backward_sim(b, a, &inv, "backward")].concat(),
        WeakForwardSim | WeakForwardBisim => {
            let pairs = reachable_terminal_pairs(a, b)?;
            let mut c = weak_forward_sim(a, b, phi, &pairs, "forward");
            if kind == WeakForwardBisim {
                c.extend(weak_forward_sim(b, a, &inv, &swapped(&pairs), "backward"));
            }
            c
        }
        WeakBackwardSim | WeakBackwardBisim => {
            let pairs = reachable_initial_pairs(a, b)?;
            let mut c = weak_backward_sim(a, b, phi, &pairs, "forward");
            if kind == WeakBackwardBisim {
                c.extend(weak_backward_sim(b, a, &inv, &swapped(&pairs), "backward"));
            }
            c
        }
    };
    Ok(CheckReport { kind, conditions })
}
