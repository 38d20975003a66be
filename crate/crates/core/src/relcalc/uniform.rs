use super::partition::Partition;
use super::rel::BoolRel;
use crate::error::{Error, Result, UniformityViolation};

/// Groups rows with identical bit patterns.
pub fn kernel(phi: &BoolRel) -> Partition {
    Partition::from_class_ids(&(0..phi.rows()).map(|a| phi.row(a)).collect::<Vec<_>>())
}

/// Groups columns with identical bit patterns.
pub fn cokernel(phi: &BoolRel) -> Partition {
    kernel(&phi.inverse())
}

pub fn is_complete(phi: &BoolRel) -> bool {
    (0..phi.rows()).all(|a| !phi.row_is_empty(a))
}

pub fn is_surjective(phi: &BoolRel) -> bool {
    is_complete(&phi.inverse())
}

fn triple_product(phi: &BoolRel) -> BoolRel {
    phi.compose(&phi.inverse()).and_then(|r| r.compose(phi)).expect("shapes are conformable by construction")
}

pub fn is_partial_uniform(phi: &BoolRel) -> bool {
    triple_product(phi).is_subset_of(phi).expect("same shape")
}

pub fn is_uniform(phi: &BoolRel) -> bool {
    uniformity_violation(phi).is_none()
}

/// The first uniformity condition `phi` fails, checking completeness,
/// surjectivity and then `φ∘φ⁻¹∘φ ⊆ φ`.
pub fn uniformity_violation(phi: &BoolRel) -> Option<UniformityViolation> {
    if let Some(row) = (0..phi.rows()).find(|&a| phi.row_is_empty(a)) {
        return Some(UniformityViolation::Incomplete { row });
    }
    let inv = phi.inverse();
    if let Some(col) = (0..inv.rows()).find(|&b| inv.row_is_empty(b)) {
        return Some(UniformityViolation::NotSurjective { col });
    }
    partial_uniformity_violation(phi)
}

fn partial_uniformity_violation(phi: &BoolRel) -> Option<UniformityViolation> {
    triple_product(phi)
        .pairs()
        .find(|&(a, b)| !phi.get(a, b))
        .map(|(row, col)| UniformityViolation::NotPartialUniform { row, col })
}

/// Enumerates functional descriptions of a relation in lexicographic order of
/// their image sequences. The first one picks the lowest column in every row.
/// Yields nothing if some row is empty.
pub struct FunctionalDescriptions {
    choices: Vec<Vec<usize>>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for FunctionalDescriptions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cursor.take()?;
        let out: Vec<usize> = cur.iter().zip(&self.choices).map(|(&i, c)| c[i]).collect();
        let mut next = cur;
        let mut pos = next.len();
        while pos > 0 {
            pos -= 1;
            if next[pos] + 1 < self.choices[pos].len() {
                next[pos] += 1;
                next[pos + 1..].iter_mut().for_each(|i| *i = 0);
                self.cursor = Some(next);
                break;
            }
        }
        Some(out)
    }
}

pub fn functional_descriptions(phi: &BoolRel) -> FunctionalDescriptions {
    let choices: Vec<Vec<usize>> = (0..phi.rows()).map(|a| phi.row(a).iter_ones().collect()).collect();
    let cursor = choices.iter().all(|c| !c.is_empty()).then(|| vec![0; choices.len()]);
    FunctionalDescriptions { choices, cursor }
}

/// The bijection between kernel classes and cokernel classes induced by a uniform relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBijection {
    pub kernel: Partition,
    pub cokernel: Partition,
    /// `map[c]` is the cokernel class assigned to kernel class `c`.
    pub map: Vec<usize>,
}

impl InducedBijection {
    pub fn inverse_map(&self) -> Vec<usize> {
        let mut inv = vec![0; self.map.len()];
        for (c, &d) in self.map.iter().enumerate() {
            inv[d] = c;
        }
        inv
    }
}

fn bijection_from(phi: &BoolRel, f: &[usize], kernel: &Partition, cokernel: &Partition) -> Vec<usize> {
    debug_assert!(f.iter().enumerate().all(|(a, &b)| phi.get(a, b)));
    kernel.classes().iter().map(|class| cokernel.class_of(f[class[0]])).collect()
}

/// `φ̃(E_a) = F_{f(a)}`, computed from the canonical description and
/// confirmed against the next one when an alternative exists.
pub fn induced_bijection(phi: &BoolRel) -> Result<InducedBijection> {
    if let Some(v) = uniformity_violation(phi) {
        return Err(Error::NotUniform(v));
    }
    let kernel = kernel(phi);
    let cokernel = cokernel(phi);
    let mut descriptions = functional_descriptions(phi);
    let canonical = descriptions.next().expect("complete relation has a description");
    let map = bijection_from(phi, &canonical, &kernel, &cokernel);
    if let Some(alt) = descriptions.next() {
        let other = bijection_from(phi, &alt, &kernel, &cokernel);
        if other != map {
            return Err(Error::CrossCheck(format!(
                "induced bijection depends on the description: {map:?} vs {other:?}"
            )));
        }
    }
    let mut seen = vec![false; cokernel.num_classes()];
    if map.len() != seen.len() || map.iter().any(|&d| std::mem::replace(&mut seen[d], true)) {
        return Err(Error::CrossCheck(format!("induced map {map:?} is not a bijection")));
    }
    Ok(InducedBijection { kernel, cokernel, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi2() -> BoolRel {
        BoolRel::from_rows(&[&[1, 1, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 1]])
    }

    fn second_example_phi() -> BoolRel {
        BoolRel::from_rows(&[&[1, 0, 1], &[1, 1, 0]])
    }

    fn kernel_pairwise(phi: &BoolRel) -> BoolRel {
        let n = phi.rows();
        let mut r = BoolRel::empty(n, n);
        for a in 0..n {
            for b in 0..n {
                r.set(a, b, phi.row(a) == phi.row(b));
            }
        }
        r
    }

    #[test]
    fn kernel_of_phi2_is_identity() {
        let k = kernel(&phi2());
        assert_eq!(k.to_relation(), kernel_pairwise(&phi2()));
        assert_eq!(k, Partition::identity(3));
    }

    #[test]
    fn cokernel_of_phi2() {
        let c = cokernel(&phi2());
        assert_eq!(c.classes(), &[vec![0, 1], vec![2, 4], vec![3]]);
        assert_eq!(c.to_relation(), kernel_pairwise(&phi2().inverse()));
    }

    #[test]
    fn kernel_of_full_relation() {
        assert_eq!(kernel(&BoolRel::full(4, 2)), Partition::single_class(4));
    }

    #[test]
    fn phi2_is_uniform() {
        let p = phi2();
        assert!(is_complete(&p) && is_surjective(&p) && is_partial_uniform(&p));
        assert!(is_uniform(&p));
        assert_eq!(p.compose(&p.inverse()).unwrap(), kernel(&p).to_relation());
        assert_eq!(p.inverse().compose(&p).unwrap(), cokernel(&p).to_relation());
    }

    #[test]
    fn second_example_phi_is_not_partial_uniform() {
        let p = second_example_phi();
        assert!(!is_partial_uniform(&p));
        assert!(matches!(uniformity_violation(&p), Some(UniformityViolation::NotPartialUniform { .. })));
        assert!(matches!(induced_bijection(&p), Err(Error::NotUniform(_))));
    }

    #[test]
    fn equivalences_are_uniform() {
        for p in super::super::partition::all_partitions(4) {
            assert!(is_uniform(&p.to_relation()));
        }
    }

    #[test]
    fn violation_order() {
        let r = BoolRel::from_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(uniformity_violation(&r), Some(UniformityViolation::Incomplete { row: 1 }));
        let r = BoolRel::from_rows(&[&[1, 0], &[1, 0]]);
        assert_eq!(uniformity_violation(&r), Some(UniformityViolation::NotSurjective { col: 1 }));
    }

    #[test]
    fn descriptions_enumerate_lexicographically() {
        let all: Vec<_> = functional_descriptions(&phi2()).collect();
        assert_eq!(all, vec![vec![0, 3, 2], vec![0, 3, 4], vec![1, 3, 2], vec![1, 3, 4]]);
        let incomplete = BoolRel::from_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(functional_descriptions(&incomplete).count(), 0);
    }

    #[test]
    fn induced_bijection_of_phi2() {
        let ib = induced_bijection(&phi2()).unwrap();
        assert_eq!(ib.map, vec![0, 2, 1]);
        assert_eq!(induced_bijection(&phi2().inverse()).unwrap().map, ib.inverse_map());
    }

    #[test]
    fn induced_bijection_of_identity() {
        let ib = induced_bijection(&BoolRel::identity(4)).unwrap();
        assert_eq!(ib.map, vec![0, 1, 2, 3]);
        assert!(ib.kernel.is_identity());
    }
}
