use std::collections::HashMap;
use std::fmt;

use super::rel::BoolRel;
use crate::error::{Error, Result};

/// An equivalence on `[0, n)` stored as classes.
///
/// Class indices are assigned in order of first occurrence, so two partitions
/// with the same blocks compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from arbitrary class labels, renumbering them by first occurrence.
    pub fn from_class_ids<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        assert!(!labels.is_empty(), "partition needs at least one element");
        let mut ids: HashMap<&T, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (e, label) in labels.iter().enumerate() {
            let c = *ids.entry(label).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(e);
            class_of.push(c);
        }
        Self { class_of, classes }
    }

    pub fn from_classes(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n || labels[e] != usize::MAX {
                    return Err(Error::InvalidAutomaton(format!("element {e} is out of range or listed twice")));
                }
                labels[e] = c;
            }
        }
        if let Some(e) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidAutomaton(format!("element {e} is in no class")));
        }
        Ok(Self::from_class_ids(&labels))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_class_ids(&(0..n).collect::<Vec<_>>())
    }

    pub fn single_class(n: usize) -> Self {
        Self::from_class_ids(&vec![0u8; n])
    }

    pub fn from_relation(r: &BoolRel) -> Result<Self> {
        if !r.is_equivalence() {
            return Err(Error::NotEquivalence(r.shape()));
        }
        Ok(Self::from_class_ids(&(0..r.rows()).map(|a| r.row(a)).collect::<Vec<_>>()))
    }

    pub fn to_relation(&self) -> BoolRel {
        let n = self.len();
        let mut r = BoolRel::empty(n, n);
        for class in &self.classes {
            for &a in class {
                for &b in class {
                    r.set(a, b, true);
                }
            }
        }
        r
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.len()
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Self) -> bool {
        self.len() == coarser.len() && self.first_unrefined_pair(coarser).is_none()
    }

    fn first_unrefined_pair(&self, coarser: &Self) -> Option<(usize, usize)> {
        self.classes.iter().find_map(|class| {
            let rep = class[0];
            class.iter().find(|&&e| !coarser.same_class(rep, e)).map(|&e| (rep, e))
        })
    }

    /// The graph of the natural map sending each element to its class.
    pub fn natural_function(&self) -> BoolRel {
        BoolRel::from_function(self.num_classes(), &self.class_of)
    }
}

/// `F/E` on the classes of `e`: classes `E_a1`, `E_a2` are related iff `(a1,a2) ∈ F`.
pub fn quotient_partition(f: &Partition, e: &Partition) -> Result<Partition> {
    if f.len() != e.len() {
        return Err(Error::PartitionSizeMismatch(e.len(), f.len()));
    }
    if let Some((a, b)) = e.first_unrefined_pair(f) {
        return Err(Error::NotRefinement(a, b));
    }
    let labels: Vec<usize> = e.classes().iter().map(|class| f.class_of(class[0])).collect();
    Ok(Partition::from_class_ids(&labels))
}

/// Least equivalence containing both `e` and `f`.
pub fn join(e: &Partition, f: &Partition) -> Result<Partition> {
    if e.len() != f.len() {
        return Err(Error::PartitionSizeMismatch(e.len(), f.len()));
    }
    let mut parent: Vec<usize> = (0..e.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in [e, f] {
        for class in p.classes() {
            for &x in &class[1..] {
                let (ra, rb) = (find(&mut parent, class[0]), find(&mut parent, x));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..e.len()).map(|x| find(&mut parent, x)).collect();
    Ok(Partition::from_class_ids(&roots))
}

impl fmt::Display for Partition {
    /// Blocks in class order, e.g. `{0 1 3} {2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let items: Vec<String> = class.iter().map(|e| e.to_string()).collect();
            write!(f, "{{{}}}", items.join(" "))?;
        }
        Ok(())
    }
}

/// Every partition of `[0, n)`, as restricted growth strings. Exponential; meant for small `n`.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == labels.len() {
            out.push(Partition::from_class_ids(labels));
            return;
        }
        for c in 0..=max + 1 {
            labels[i] = c;
            rec(i + 1, max.max(c), labels, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut labels, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcalc::rel::transitive_closure;

    #[test]
    fn first_occurrence_numbering() {
        let p = Partition::from_class_ids(&['b', 'a', 'b', 'c']);
        assert_eq!(p.class_ids(), &[0, 1, 0, 2]);
        assert_eq!(p.classes(), &[vec![0, 2], vec![1], vec![3]]);
        assert_eq!(p.to_string(), "{0 2} {1} {3}");
    }

    #[test]
    fn relation_round_trip() {
        let p = Partition::from_class_ids(&[0, 1, 0, 2, 1]);
        let r = p.to_relation();
        assert!(r.is_equivalence());
        assert_eq!(Partition::from_relation(&r).unwrap(), p);
    }

    #[test]
    fn from_relation_rejects_non_equivalence() {
        let r = BoolRel::from_rows(&[&[1, 1], &[0, 1]]);
        assert!(matches!(Partition::from_relation(&r), Err(Error::NotEquivalence(_))));
    }

    #[test]
    fn quotient_by_itself_is_identity() {
        let e = Partition::from_class_ids(&[0, 0, 1, 2, 1]);
        let q = quotient_partition(&e, &e).unwrap();
        assert_eq!(q, Partition::identity(3));
    }

    #[test]
    fn quotient_collapses_coarser_classes() {
        let e = Partition::from_class_ids(&[0, 0, 1, 2, 1]);
        let f = Partition::from_class_ids(&[0, 0, 1, 0, 1]);
        let q = quotient_partition(&f, &e).unwrap();
        assert_eq!(q.class_ids(), &[0, 1, 0]);
    }

    #[test]
    fn quotient_requires_refinement() {
        let e = Partition::from_class_ids(&[0, 0, 1]);
        let f = Partition::from_class_ids(&[0, 1, 1]);
        assert_eq!(quotient_partition(&f, &e), Err(Error::NotRefinement(0, 1)));
    }

    #[test]
    fn join_with_identity() {
        let e = Partition::from_class_ids(&[0, 1, 0, 2]);
        assert_eq!(join(&Partition::identity(4), &e).unwrap(), e);
    }

    #[test]
    fn join_chains_into_single_class() {
        let e = Partition::from_class_ids(&[0, 0, 1]);
        let f = Partition::from_class_ids(&[0, 1, 1]);
        assert_eq!(join(&e, &f).unwrap(), Partition::single_class(3));
    }

    #[test]
    fn join_matches_closure_of_union() {
        for e in all_partitions(4) {
            for f in all_partitions(4) {
                let closure = transitive_closure(&e.to_relation().union(&f.to_relation()).unwrap()).unwrap();
                assert_eq!(join(&e, &f).unwrap().to_relation(), closure);
            }
        }
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
    }

    #[test]
    fn refinement_order() {
        let e = Partition::from_class_ids(&[0, 0, 1, 2]);
        assert!(Partition::identity(4).refines(&e));
        assert!(e.refines(&Partition::single_class(4)));
        assert!(!Partition::single_class(4).refines(&e));
    }
}
