mod check;
mod greatest;
mod weak;

use std::fmt;
use std::str::FromStr;

pub use check::{check, CheckReport, Condition};
pub use greatest::{
    greatest, greatest_backward_bisim, greatest_backward_forward_bisim, greatest_bb_equivalence,
    greatest_fb_equivalence, greatest_forward_backward_bisim, greatest_forward_bisim,
};
pub use weak::{
    greatest_weak_backward_bisim, greatest_weak_backward_sim, greatest_weak_forward_bisim, greatest_weak_forward_sim,
    reachable_initial_pairs, reachable_terminal_pairs, reachable_terminal_sets, wbb_equivalence_bound,
    wfb_equivalence_bound,
};

use crate::error::Error;
use crate::relcalc::BoolRel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BisimKind {
    ForwardSim,
    BackwardSim,
    ForwardBisim,
    BackwardBisim,
    BackwardForwardBisim,
    ForwardBackwardBisim,
    WeakForwardSim,
    WeakBackwardSim,
    WeakForwardBisim,
    WeakBackwardBisim,
}

impl BisimKind {
    pub const ALL: [BisimKind; 10] = [
        Self::ForwardSim,
        Self::BackwardSim,
        Self::ForwardBisim,
        Self::BackwardBisim,
        Self::BackwardForwardBisim,
        Self::ForwardBackwardBisim,
        Self::WeakForwardSim,
        Self::WeakBackwardSim,
        Self::WeakForwardBisim,
        Self::WeakBackwardBisim,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Self::ForwardSim => "fs",
            Self::BackwardSim => "bs",
            Self::ForwardBisim => "fb",
            Self::BackwardBisim => "bb",
            Self::BackwardForwardBisim => "bfb",
            Self::ForwardBackwardBisim => "fbb",
            Self::WeakForwardSim => "wfs",
            Self::WeakBackwardSim => "wbs",
            Self::WeakForwardBisim => "wfb",
            Self::WeakBackwardBisim => "wbb",
        }
    }

    /// The kind that corresponds to this one on reversed automata.
    pub fn dual(self) -> Self {
        match self {
            Self::ForwardSim => Self::BackwardSim,
            Self::BackwardSim => Self::ForwardSim,
            Self::ForwardBisim => Self::BackwardBisim,
            Self::BackwardBisim => Self::ForwardBisim,
            Self::BackwardForwardBisim => Self::ForwardBackwardBisim,
            Self::ForwardBackwardBisim => Self::BackwardForwardBisim,
            Self::WeakForwardSim => Self::WeakBackwardSim,
            Self::WeakBackwardSim => Self::WeakForwardSim,
            Self::WeakForwardBisim => Self::WeakBackwardBisim,
            Self::WeakBackwardBisim => Self::WeakForwardBisim,
        }
    }
}

impl fmt::Display for BisimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for BisimKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|k| k.short_name() == s)
            .ok_or_else(|| Error::Unsupported(format!("bisimulation kind `{s}`")))
    }
}

/// Renames conditions computed on reversed automata back to the originals:
/// initial and terminal trade places, as do right and left languages.
pub(crate) fn dual_condition_name(name: &str) -> String {
    let swap = [
        ("initial", "terminal"),
        ("terminal", "initial"),
        ("right-languages", "left-languages"),
        ("left-languages", "right-languages"),
    ];
    for (from, to) in swap {
        if let Some(rest) = name.strip_prefix(from) {
            return format!("{to}{rest}");
        }
    }
    name.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Greatest(BoolRel),
    NoneExists { violated: Vec<String> },
}

/// Result of a greatest-relation computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimReport {
    pub kind: BisimKind,
    pub outcome: Outcome,
    /// The relation the computation stabilized on, accepted or not.
    pub fixpoint: BoolRel,
    /// Step applications, counting the one that confirmed stability. For the
    /// weak kinds, the number of intersected language pairs.
    pub iterations: usize,
    /// `φ₁, φ₂, …` up to the fixpoint. Empty for the weak kinds.
    pub trace: Vec<BoolRel>,
    /// Set when the accepted relation is empty, which only happens when the
    /// initial (or terminal) conditions hold vacuously.
    pub relation_is_empty: bool,
}

impl BisimReport {
    pub fn relation(&self) -> Option<&BoolRel> {
        match &self.outcome {
            Outcome::Greatest(r) => Some(r),
            Outcome::NoneExists { .. } => None,
        }
    }

    /// The accepted relation, unless it is empty.
    pub fn nonempty_relation(&self) -> Option<&BoolRel> {
        self.relation().filter(|r| !r.is_empty())
    }

    pub fn failure(&self) -> Option<&[String]> {
        match &self.outcome {
            Outcome::Greatest(_) => None,
            Outcome::NoneExists { violated } => Some(violated),
        }
    }

    pub fn exists(&self) -> bool {
        self.relation().is_some()
    }

    pub(crate) fn dualized(mut self, kind: BisimKind) -> Self {
        self.kind = kind;
        if let Outcome::NoneExists { violated } = &mut self.outcome {
            *violated = violated.iter().map(|v| dual_condition_name(v)).collect();
        }
        self
    }

    pub(crate) fn decide(
        kind: BisimKind,
        fixpoint: BoolRel,
        iterations: usize,
        trace: Vec<BoolRel>,
        conditions: Vec<Condition>,
    ) -> Self {
        let violated: Vec<String> = conditions.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
        let (outcome, relation_is_empty) = if violated.is_empty() {
            (Outcome::Greatest(fixpoint.clone()), fixpoint.is_empty())
        } else {
            (Outcome::NoneExists { violated }, false)
        };
        Self { kind, outcome, fixpoint, iterations, trace, relation_is_empty }
    }
}
