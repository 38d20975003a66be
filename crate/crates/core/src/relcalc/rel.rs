use std::fmt;

use super::vec::{word_count, BoolVec, WORD_BITS};
use crate::error::{Error, Result, Shape};

/// A relation between two finite indexed sets, stored as a dense bit matrix
/// with each row packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolRel {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BoolRel {
    pub fn empty(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "relation dimensions must be positive");
        let stride = word_count(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        let mut r = Self::empty(rows, cols);
        let ones = BoolVec::ones(cols);
        for a in 0..rows {
            r.set_row(a, &ones);
        }
        r
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n, n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    /// Builds a relation from `0`/`1` rows; all rows must have the same length.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        assert!(!rows.is_empty(), "relation needs at least one row");
        let cols = rows[0].len();
        let mut r = Self::empty(rows.len(), cols);
        for (a, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {a}");
            for (b, &bit) in row.iter().enumerate() {
                if bit != 0 {
                    r.set(a, b, true);
                }
            }
        }
        r
    }

    pub fn from_pairs(rows: usize, cols: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(rows, cols);
        for (a, b) in pairs {
            r.set(a, b, true);
        }
        r
    }

    /// The graph of a function `f: [0, rows) -> [0, cols)`.
    pub fn from_function(cols: usize, f: &[usize]) -> Self {
        Self::from_pairs(f.len(), cols, f.iter().copied().enumerate())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Shape {
        Shape { rows: self.rows, cols: self.cols }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn row_words(&self, a: usize) -> &[u64] {
        &self.data[a * self.stride..(a + 1) * self.stride]
    }

    fn row_words_mut(&mut self, a: usize) -> &mut [u64] {
        &mut self.data[a * self.stride..(a + 1) * self.stride]
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        assert!(a < self.rows && b < self.cols, "({a},{b}) out of range for {}", self.shape());
        self.row_words(a)[b / WORD_BITS] >> (b % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, a: usize, b: usize, value: bool) {
        assert!(a < self.rows && b < self.cols, "({a},{b}) out of range for {}", self.shape());
        let bit = 1u64 << (b % WORD_BITS);
        let w = &mut self.row_words_mut(a)[b / WORD_BITS];
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn row(&self, a: usize) -> BoolVec {
        BoolVec::from_words(self.cols, self.row_words(a).to_vec())
    }

    pub fn set_row(&mut self, a: usize, v: &BoolVec) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(a).copy_from_slice(v.words());
    }

    pub fn column(&self, b: usize) -> BoolVec {
        BoolVec::from_indices(self.rows, (0..self.rows).filter(|&a| self.get(a, b)))
    }

    pub fn row_is_empty(&self, a: usize) -> bool {
        self.row_words(a).iter().all(|&w| w == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |a| {
            let row = self.row(a);
            row.iter_ones().map(move |b| (a, b)).collect::<Vec<_>>()
        })
    }

    fn mismatch(&self, other: &Self, op: &'static str) -> Error {
        Error::DimensionMismatch { op, left: self.shape(), right: other.shape() }
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(self.mismatch(other, op))
        }
    }

    /// `R∘S`: `(a,c)` is set iff some `b` has `(a,b) ∈ R` and `(b,c) ∈ S`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch(other, "compose"));
        }
        let mut out = Self::empty(self.rows, other.cols);
        for a in 0..self.rows {
            let row = self.row(a);
            let dst = a * out.stride;
            for b in row.iter_ones() {
                let src = other.row_words(b);
                for (d, s) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::empty(self.cols, self.rows);
        for (a, b) in self.pairs() {
            out.set(b, a, true);
        }
        out
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "union")?;
        Ok(self.zip_data(other, |a, b| a | b))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "intersect")?;
        Ok(self.zip_data(other, |a, b| a & b))
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|w| *w = !*w);
        out.clear_tails();
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other, "subset_of")?;
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a & !b == 0))
    }

    fn zip_data(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let mut out = self.clone();
        for (d, &o) in out.data.iter_mut().zip(&other.data) {
            *d = f(*d, o);
        }
        out.clear_tails();
        out
    }

    fn clear_tails(&mut self) {
        let mask = super::vec::tail_mask(self.cols);
        for a in 0..self.rows {
            let idx = a * self.stride + self.stride - 1;
            self.data[idx] &= mask;
        }
    }

    /// True when `R = R⁻¹`.
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.inverse()
    }

    pub fn is_reflexive(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.get(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.is_square() && self.compose(self).and_then(|rr| rr.is_subset_of(self)).unwrap_or(false)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }
}

impl fmt::Display for BoolRel {
    /// One line of space-separated `0`/`1` digits per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.rows {
            if a > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}", self.row(a))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolRel {}", self.shape())?;
        write!(f, "{self}")
    }
}

/// `α∘R`: `b` is set iff some `a ∈ α` has `(a,b) ∈ R`.
pub fn vec_rel(alpha: &BoolVec, r: &BoolRel) -> Result<BoolVec> {
    if alpha.len() != r.rows() {
        return Err(Error::DimensionMismatch {
            op: "vec_rel",
            left: Shape { rows: 1, cols: alpha.len() },
            right: r.shape(),
        });
    }
    let mut words = vec![0u64; word_count(r.cols())];
    for a in alpha.iter_ones() {
        for (d, s) in words.iter_mut().zip(r.row_words(a)) {
            *d |= s;
        }
    }
    Ok(BoolVec::from_words(r.cols(), words))
}

/// `R∘β`: `a` is set iff some `b ∈ β` has `(a,b) ∈ R`.
pub fn rel_vec(r: &BoolRel, beta: &BoolVec) -> Result<BoolVec> {
    if beta.len() != r.cols() {
        return Err(Error::DimensionMismatch {
            op: "rel_vec",
            left: r.shape(),
            right: Shape { rows: beta.len(), cols: 1 },
        });
    }
    let bw = beta.words();
    Ok(BoolVec::from_indices(
        r.rows(),
        (0..r.rows()).filter(|&a| r.row_words(a).iter().zip(bw).any(|(x, y)| x & y != 0)),
    ))
}

/// `η→ξ`: `(a,b)` is set iff `a ∈ η` implies `b ∈ ξ`.
pub fn arrow_right(eta: &BoolVec, xi: &BoolVec) -> BoolRel {
    let mut r = BoolRel::empty(eta.len(), xi.len());
    let all = BoolVec::ones(xi.len());
    for a in 0..eta.len() {
        r.set_row(a, if eta.get(a) { xi } else { &all });
    }
    r
}

/// `η←ξ`: `(a,b)` is set iff `b ∈ ξ` implies `a ∈ η`.
pub fn arrow_left(eta: &BoolVec, xi: &BoolVec) -> BoolRel {
    let mut r = BoolRel::empty(eta.len(), xi.len());
    let all = BoolVec::ones(xi.len());
    let not_xi = xi.complement();
    for a in 0..eta.len() {
        r.set_row(a, if eta.get(a) { &all } else { &not_xi });
    }
    r
}

/// `η↔ξ`: `(a,b)` is set iff `a ∈ η` exactly when `b ∈ ξ`.
pub fn biarrow(eta: &BoolVec, xi: &BoolVec) -> BoolRel {
    let mut r = BoolRel::empty(eta.len(), xi.len());
    let not_xi = xi.complement();
    for a in 0..eta.len() {
        r.set_row(a, if eta.get(a) { xi } else { &not_xi });
    }
    r
}

/// Right residual `φ/α`, the greatest `ψ` with `α∘ψ ⊆ φ`.
///
/// Computed as `∁(α⁻¹∘∁φ)`: `(a,b)` drops out exactly when some `a'` with
/// `(a',a) ∈ α` misses `(a',b)` in `φ`.
pub fn residual_right(phi: &BoolRel, alpha: &BoolRel) -> Result<BoolRel> {
    if !alpha.is_square() || alpha.rows() != phi.rows() {
        return Err(Error::DimensionMismatch { op: "residual_right", left: phi.shape(), right: alpha.shape() });
    }
    Ok(alpha.inverse().compose(&phi.complement())?.complement())
}

/// Left residual `φ\β`, the greatest `ψ` with `ψ∘β ⊆ φ`.
///
/// Computed as `∁(∁φ∘β⁻¹)`.
pub fn residual_left(phi: &BoolRel, beta: &BoolRel) -> Result<BoolRel> {
    if !beta.is_square() || beta.rows() != phi.cols() {
        return Err(Error::DimensionMismatch { op: "residual_left", left: phi.shape(), right: beta.shape() });
    }
    Ok(phi.complement().compose(&beta.inverse())?.complement())
}

/// Least transitive relation containing `r`, by repeated squaring.
pub fn transitive_closure(r: &BoolRel) -> Result<BoolRel> {
    if !r.is_square() {
        return Err(Error::DimensionMismatch { op: "transitive_closure", left: r.shape(), right: r.shape() });
    }
    let mut cur = r.clone();
    loop {
        let next = cur.union(&cur.compose(&cur)?)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}
