//! Dense binary relations over `0..size`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A binary relation on the index set `0..size`, stored as a dense bit matrix.
///
/// `contains(a, b)` reads "a is related to b". For the order-like relations in
/// this crate that means "a is below b".
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    size: usize,
    bits: Vec<bool>,
}

impl std::fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryRelation")
            .field("size", &self.size)
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl BinaryRelation {
    pub fn empty(size: usize) -> Self {
        Self {
            size,
            bits: vec![false; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |a, b| a == b)
    }

    pub fn from_fn(size: usize, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                bits.push(related(a, b));
            }
        }
        Self { size, bits }
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rel = Self::empty(size);
        for (a, b) in pairs {
            for value in [a, b] {
                if value >= size {
                    return Err(Error::IndexOutOfRange { value, size });
                }
            }
            rel.insert(a, b);
        }
        Ok(rel)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.size + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.size + b] = true;
    }

    /// Number of related pairs.
    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Related pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size)
            .flat_map(move |a| (0..self.size).map(move |b| (a, b)))
            .filter(move |&(a, b)| self.contains(a, b))
    }

    /// All `a` with `a R b`.
    pub fn below(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&a| self.contains(a, b))
    }

    /// All `b` with `a R b`.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&b| self.contains(a, b))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |a, b| self.contains(b, a))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self::from_fn(self.size, |a, b| self.contains(a, b) && other.contains(a, b))
    }

    /// First pair of `self` missing from `other`, if any.
    pub fn first_not_in(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!(self.size, other.size);
        self.pairs().find(|&(a, b)| !other.contains(a, b))
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.first_not_in(other).is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(a, b)| self.contains(b, a))
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn reflexive_transitive_closure(&self) -> Self {
        let n = self.size;
        let mut closure = self.clone();
        for a in 0..n {
            closure.insert(a, a);
        }
        for k in 0..n {
            for i in 0..n {
                if !closure.contains(i, k) {
                    continue;
                }
                for j in 0..n {
                    if closure.contains(k, j) {
                        closure.insert(i, j);
                    }
                }
            }
        }
        closure
    }

    /// Every element has only finitely many predecessors. Always true here,
    /// since relations are finite; kept so callers can state the hypothesis.
    pub fn is_principally_finite(&self) -> bool {
        true
    }

    /// One pair per line, `a b`, in lexicographic order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.pairs() {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}
