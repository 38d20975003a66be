use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::automaton::{find_isomorphism, is_isomorphism, Nfa, Word};
use crate::bisim::{
    check, greatest_bb_equivalence, greatest_fb_equivalence, greatest_forward_bisim, greatest_weak_forward_bisim,
    reachable_terminal_pairs, wbb_equivalence_bound, wfb_equivalence_bound, BisimKind, Condition,
};
use crate::error::{Error, Result};
use crate::relcalc::{
    cokernel, induced_bijection, is_complete, is_surjective, kernel, rel_vec, uniformity_violation, vec_rel, BoolRel,
    Partition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Greatest forward bisimulation, confirmed by factor-automaton isomorphism.
    ForwardBisimulation,
    /// Greatest weak forward bisimulation, confirmed by weak forward isomorphism of factors.
    WeakForwardBisimulation,
    BoundedLanguage {
        maxlen: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Fb { relation: BoolRel, factor_iso: Vec<usize> },
    Wfb { relation: BoolRel, weak_iso: Vec<usize> },
    BoundedLanguage { words: BTreeSet<Word> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub method: Method,
    pub witness: Option<Witness>,
    /// For bounded-language comparisons, the least word accepted by exactly one side.
    pub distinguishing_word: Option<Word>,
}

impl fmt::Display for EquivVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.equivalent { "EQUIVALENT" } else { "NOT-EQUIVALENT" })
    }
}

fn cross_check(what: &str, first: bool, second: bool) -> Result<()> {
    if first == second {
        Ok(())
    } else {
        Err(Error::CrossCheck(format!("{what}: direct path says {first}, factor path says {second}")))
    }
}

/// Decides forward bisimulation equivalence two ways and insists they agree:
/// a complete, surjective greatest forward bisimulation, and isomorphic
/// factor automata by the greatest forward bisimulation equivalences.
pub fn fb_equivalent(a: &Nfa, b: &Nfa) -> Result<EquivVerdict> {
    a.same_alphabet(b)?;
    let report = greatest_forward_bisim(a, b)?;
    let relation = report.relation().filter(|r| is_complete(r) && is_surjective(r)).cloned();
    let fa = a.factor(&greatest_fb_equivalence(a)?)?;
    let fb = b.factor(&greatest_fb_equivalence(b)?)?;
    let iso = find_isomorphism(&fa, &fb)?;
    cross_check("forward bisimulation equivalence", relation.is_some(), iso.is_some())?;
    let witness = match (relation, iso) {
        (Some(relation), Some(factor_iso)) => {
            if !check(BisimKind::ForwardBisim, a, b, &relation)?.holds() || !is_isomorphism(&fa, &fb, &factor_iso) {
                return Err(Error::CrossCheck("forward bisimulation witness failed re-verification".into()));
            }
            Some(Witness::Fb { relation, factor_iso })
        }
        _ => None,
    };
    Ok(EquivVerdict {
        equivalent: witness.is_some(),
        method: Method::ForwardBisimulation,
        witness,
        distinguishing_word: None,
    })
}

/// True when `f` is a bijection matching initial states and membership in
/// every reachable pair of right-language sets.
pub fn is_weak_forward_isomorphism(a: &Nfa, b: &Nfa, f: &[usize]) -> Result<bool> {
    let n = a.num_states();
    if b.num_states() != n || f.len() != n {
        return Ok(false);
    }
    let mut seen = vec![false; n];
    if f.iter().any(|&q| q >= n || std::mem::replace(&mut seen[q], true)) {
        return Ok(false);
    }
    let pairs = reachable_terminal_pairs(a, b)?;
    Ok((0..n)
        .all(|p| a.sigma().get(p) == b.sigma().get(f[p]) && pairs.iter().all(|(ta, tb)| ta.get(p) == tb.get(f[p]))))
}

/// A weak forward isomorphism from `a` to `b`, if one exists.
///
/// The defining conditions only compare each state with its image, so states
/// are grouped by their initial bit and membership signature across the
/// reachable right-language pairs. Any bijection respecting the groups works;
/// the lexicographically least one is returned.
pub fn weak_forward_isomorphism(a: &Nfa, b: &Nfa) -> Result<Option<Vec<usize>>> {
    let pairs = reachable_terminal_pairs(a, b)?;
    let n = a.num_states();
    if b.num_states() != n {
        return Ok(None);
    }
    let signature = |m: &Nfa, p: usize, left: bool| -> (bool, Vec<bool>) {
        let bits = pairs.iter().map(|(ta, tb)| if left { ta.get(p) } else { tb.get(p) }).collect();
        (m.sigma().get(p), bits)
    };
    let mut pool: HashMap<(bool, Vec<bool>), std::collections::VecDeque<usize>> = HashMap::new();
    for q in 0..n {
        pool.entry(signature(b, q, false)).or_default().push_back(q);
    }
    let mut f = Vec::with_capacity(n);
    for p in 0..n {
        match pool.get_mut(&signature(a, p, true)).and_then(|v| v.pop_front()) {
            Some(q) => f.push(q),
            None => return Ok(None),
        }
    }
    Ok(Some(f))
}

/// Decides weak forward bisimulation equivalence two ways and insists they
/// agree: a complete, surjective greatest weak forward bisimulation, and a
/// weak forward isomorphism between the factors by the greatest weak forward
/// bisimulation equivalences.
pub fn wfb_equivalent(a: &Nfa, b: &Nfa) -> Result<EquivVerdict> {
    a.same_alphabet(b)?;
    let report = greatest_weak_forward_bisim(a, b)?;
    let relation = report.relation().filter(|r| is_complete(r) && is_surjective(r)).cloned();
    let fa = a.factor(&wfb_equivalence_bound(a))?;
    let fb = b.factor(&wfb_equivalence_bound(b))?;
    let iso = weak_forward_isomorphism(&fa, &fb)?;
    cross_check("weak forward bisimulation equivalence", relation.is_some(), iso.is_some())?;
    let witness = match (relation, iso) {
        (Some(relation), Some(weak_iso)) => {
            if !check(BisimKind::WeakForwardBisim, a, b, &relation)?.holds()
                || !is_weak_forward_isomorphism(&fa, &fb, &weak_iso)?
            {
                return Err(Error::CrossCheck("weak forward witness failed re-verification".into()));
            }
            Some(Witness::Wfb { relation, weak_iso })
        }
        _ => None,
    };
    Ok(EquivVerdict {
        equivalent: witness.is_some(),
        method: Method::WeakForwardBisimulation,
        witness,
        distinguishing_word: None,
    })
}

/// Compares the languages of `a` and `b` restricted to words of length at most `maxlen`.
pub fn language_equivalent(a: &Nfa, b: &Nfa, maxlen: usize) -> Result<EquivVerdict> {
    a.same_alphabet(b)?;
    let (la, lb) = (a.bounded_language(maxlen), b.bounded_language(maxlen));
    let distinguishing_word = la.symmetric_difference(&lb).next().cloned();
    let equivalent = distinguishing_word.is_none();
    Ok(EquivVerdict {
        equivalent,
        method: Method::BoundedLanguage { maxlen },
        witness: equivalent.then_some(Witness::BoundedLanguage { words: la }),
        distinguishing_word,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    Fb,
    Bb,
    Wfb,
    Wbb,
    /// Forward then backward reduction, repeated while the state count drops.
    Alternate,
}

impl ReduceMode {
    pub const ALL: [ReduceMode; 5] = [Self::Fb, Self::Bb, Self::Wfb, Self::Wbb, Self::Alternate];

    pub fn name(self) -> &'static str {
        match self {
            Self::Fb => "fb",
            Self::Bb => "bb",
            Self::Wfb => "wfb",
            Self::Wbb => "wbb",
            Self::Alternate => "alternate",
        }
    }
}

impl FromStr for ReduceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::Unsupported(format!("reduction mode `{s}`")))
    }
}

/// The equivalence a single-step reduction factors by.
pub fn reduction_equivalence(a: &Nfa, mode: ReduceMode) -> Result<Partition> {
    match mode {
        ReduceMode::Fb => greatest_fb_equivalence(a),
        ReduceMode::Bb => greatest_bb_equivalence(a),
        ReduceMode::Wfb => Ok(wfb_equivalence_bound(a)),
        ReduceMode::Wbb => Ok(wbb_equivalence_bound(a)),
        ReduceMode::Alternate => Err(Error::Unsupported("a single equivalence for alternate reduction".into())),
    }
}

/// Factors `a` by the greatest equivalence of the chosen kind.
pub fn reduce(a: &Nfa, mode: ReduceMode) -> Result<Nfa> {
    if mode != ReduceMode::Alternate {
        return a.factor(&reduction_equivalence(a, mode)?);
    }
    let mut cur = a.clone();
    loop {
        let next = reduce(&reduce(&cur, ReduceMode::Fb)?, ReduceMode::Bb)?;
        if next.num_states() >= cur.num_states() {
            return Ok(cur);
        }
        cur = next;
    }
}

/// The three structural formulations and the equality formulation of
/// "this uniform relation is a bisimulation", evaluated separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformCrosscheck {
    pub kernel_condition: bool,
    pub cokernel_condition: bool,
    pub factor_isomorphism: bool,
    pub equalities: Vec<Condition>,
    pub is_bisimulation: bool,
}

impl UniformCrosscheck {
    pub fn structural(&self) -> bool {
        self.kernel_condition && self.cokernel_condition && self.factor_isomorphism
    }

    pub fn equalities_hold(&self) -> bool {
        self.equalities.iter().all(|c| c.holds)
    }

    fn consistent(self, what: &str) -> Result<Self> {
        if self.structural() == self.is_bisimulation && self.equalities_hold() == self.is_bisimulation {
            Ok(self)
        } else {
            Err(Error::CrossCheck(format!(
                "{what}: structural {}, equalities {}, definition {}",
                self.structural(),
                self.equalities_hold(),
                self.is_bisimulation
            )))
        }
    }
}

fn require_uniform(phi: &BoolRel) -> Result<()> {
    match uniformity_violation(phi) {
        Some(v) => Err(Error::NotUniform(v)),
        None => Ok(()),
    }
}

fn equality(name: String, holds: bool) -> Condition {
    Condition { name, holds }
}

fn comp(l: &BoolRel, r: &BoolRel) -> BoolRel {
    l.compose(r).expect("conformable by construction")
}

fn structural(a: &Nfa, b: &Nfa, phi: &BoolRel, cokernel_kind: BisimKind) -> Result<(bool, bool, bool)> {
    let (e, f) = (kernel(phi), cokernel(phi));
    let kernel_condition = check(BisimKind::ForwardBisim, a, a, &e.to_relation())?.holds();
    let cokernel_condition = check(cokernel_kind, b, b, &f.to_relation())?.holds();
    let map = induced_bijection(phi)?.map;
    let factor_isomorphism = is_isomorphism(&a.factor(&e)?, &b.factor(&f)?, &map);
    Ok((kernel_condition, cokernel_condition, factor_isomorphism))
}

/// For a uniform `φ`, evaluates: the kernel is a forward bisimulation
/// equivalence, the cokernel is one, and the induced bijection is an
/// isomorphism of the factor automata; separately evaluates the equalities
/// characterizing uniform forward bisimulations; and checks that both agree
/// with the definition.
pub fn uniform_fb_crosscheck(a: &Nfa, b: &Nfa, phi: &BoolRel) -> Result<UniformCrosscheck> {
    a.same_alphabet(b)?;
    require_uniform(phi)?;
    let (kernel_condition, cokernel_condition, factor_isomorphism) = structural(a, b, phi, BisimKind::ForwardBisim)?;
    let inv = phi.inverse();
    let mut equalities = vec![
        equality("σA∘φ∘φ⁻¹ = σB∘φ⁻¹".into(), vec_rel(&vec_rel(a.sigma(), phi)?, &inv)? == vec_rel(b.sigma(), &inv)?),
        equality("σA∘φ = σB∘φ⁻¹∘φ".into(), vec_rel(a.sigma(), phi)? == vec_rel(&vec_rel(b.sigma(), &inv)?, phi)?),
    ];
    for (x, name) in a.alphabet().iter().enumerate() {
        let (da, db) = (a.delta(x), b.delta(x));
        equalities.push(equality(
            format!("δA_{name}∘φ∘φ⁻¹ = φ∘δB_{name}∘φ⁻¹"),
            comp(&comp(da, phi), &inv) == comp(&comp(phi, db), &inv),
        ));
        equalities.push(equality(
            format!("φ⁻¹∘δA_{name}∘φ = δB_{name}∘φ⁻¹∘φ"),
            comp(&comp(&inv, da), phi) == comp(&comp(db, &inv), phi),
        ));
    }
    equalities.push(equality("τA = φ∘τB".into(), *a.tau() == rel_vec(phi, b.tau())?));
    equalities.push(equality("φ⁻¹∘τA = τB".into(), rel_vec(&inv, a.tau())? == *b.tau()));
    let is_bisimulation = check(BisimKind::ForwardBisim, a, b, phi)?.holds();
    UniformCrosscheck { kernel_condition, cokernel_condition, factor_isomorphism, equalities, is_bisimulation }
        .consistent("uniform forward bisimulation")
}

/// The backward-forward analogue of [`uniform_fb_crosscheck`]: the cokernel
/// must be a backward bisimulation equivalence, and the equalities are
/// `σA∘φ = σB`, `δA_x∘φ = φ∘δB_x`, `τA = φ∘τB`.
pub fn uniform_bfb_crosscheck(a: &Nfa, b: &Nfa, phi: &BoolRel) -> Result<UniformCrosscheck> {
    a.same_alphabet(b)?;
    require_uniform(phi)?;
    let (kernel_condition, cokernel_condition, factor_isomorphism) = structural(a, b, phi, BisimKind::BackwardBisim)?;
    let mut equalities = vec![equality("σA∘φ = σB".into(), vec_rel(a.sigma(), phi)? == *b.sigma())];
    for (x, name) in a.alphabet().iter().enumerate() {
        equalities.push(equality(format!("δA_{name}∘φ = φ∘δB_{name}"), comp(a.delta(x), phi) == comp(phi, b.delta(x))));
    }
    equalities.push(equality("τA = φ∘τB".into(), *a.tau() == rel_vec(phi, b.tau())?));
    let is_bisimulation = check(BisimKind::BackwardForwardBisim, a, b, phi)?.holds();
    UniformCrosscheck { kernel_condition, cokernel_condition, factor_isomorphism, equalities, is_bisimulation }
        .consistent("uniform backward-forward bisimulation")
}

/// For a total function `f`, being a forward bisimulation and being a
/// backward-forward bisimulation coincide; returns the shared answer.
pub fn function_fb_iff_bfb(a: &Nfa, b: &Nfa, f: &BoolRel) -> Result<bool> {
    if let Some((row, count)) = (0..f.rows()).map(|r| (r, f.row(r).count_ones())).find(|&(_, c)| c != 1) {
        return Err(Error::NotFunctional { row, count });
    }
    let fb = check(BisimKind::ForwardBisim, a, b, f)?.holds();
    let bfb = check(BisimKind::BackwardForwardBisim, a, b, f)?.holds();
    if fb != bfb {
        return Err(Error::CrossCheck(format!(
            "function is {}a forward bisimulation but {}a backward-forward one",
            if fb { "" } else { "not " },
            if bfb { "" } else { "not " }
        )));
    }
    Ok(fb)
}
