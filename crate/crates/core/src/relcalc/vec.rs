use std::fmt;

use crate::error::{Error, Result, Shape};

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Mask of the valid bits in the last word of a `len`-bit row.
pub(crate) fn tail_mask(len: usize) -> u64 {
    match len % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// A subset of an indexed state set, packed into machine words.
///
/// Bits past `len` are always zero, so word-level equality and hashing
/// coincide with set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolVec {
    len: usize,
    words: Vec<u64>,
}

impl BoolVec {
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "BoolVec length must be positive");
        Self { len, words: vec![0; word_count(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        v.words.iter_mut().for_each(|w| *w = !0);
        v.clear_tail();
        v
    }

    pub fn singleton(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from `0`/`1` integers, the way vectors are written by hand.
    pub fn from_bits(bits: &[u8]) -> Self {
        let bools: Vec<bool> = bits.iter().map(|&b| b != 0).collect();
        Self::from_bools(&bools)
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(len));
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let mask = tail_mask(self.len);
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; a vector has at least one position. Provided for clippy's benefit.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= bit;
        } else {
            self.words[i / WORD_BITS] &= !bit;
        }
    }

    /// True when no position is set (the empty subset).
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::ones(self.len)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + t)
                }
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    fn check_len(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: Shape { rows: 1, cols: self.len },
                right: Shape { rows: 1, cols: other.len },
            })
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_len(other, "union")?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_len(other, "intersect")?;
        Ok(self.zip_words(other, |a, b| a & b))
    }

    pub fn complement(&self) -> Self {
        let words = self.words.iter().map(|w| !w).collect();
        Self::from_words(self.len, words)
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_len(other, "subset_of")?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0))
    }

    /// `α∘β`: true iff the two subsets intersect.
    pub fn scalar(&self, other: &Self) -> Result<bool> {
        self.check_len(other, "scalar")?;
        Ok(self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0))
    }

    fn zip_words(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        Self::from_words(self.len, words)
    }
}

impl fmt::Display for BoolVec {
    /// Space-separated `0`/`1` digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
