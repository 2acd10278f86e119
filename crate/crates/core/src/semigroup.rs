//! Finite semigroups given by Cayley tables, transformation semigroups, and
//! Green's preorders.
//!
//! Composition of transformations is fixed throughout the crate as
//! `fg = f ∘ g`: apply `g` first, then `f`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::BinaryRelation;

/// A finite semigroup on the elements `0..size`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("size", &self.size)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

/// Which of Green's preorders to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenSide {
    R,
    L,
    J,
}

impl FiniteSemigroup {
    /// Builds a semigroup from its Cayley table, `table[a][b] = ab`, checking
    /// associativity exhaustively.
    pub fn from_cayley_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::EmptyTable);
        }
        let mut flat = Vec::with_capacity(size * size);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != size {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    expected: size,
                });
            }
            for &value in entries {
                if value >= size {
                    return Err(Error::IndexOutOfRange { value, size });
                }
                flat.push(value);
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != size {
                return Err(Error::InvalidArgument(format!(
                    "{} labels given for {size} elements",
                    labels.len()
                )));
            }
        }
        let semigroup = Self {
            size,
            table: flat,
            labels,
        };
        if let Some((a, b, c)) = semigroup.first_non_associative_triple() {
            return Err(Error::NonAssociative { a, b, c });
        }
        Ok(semigroup)
    }

    /// Closure of a nonempty list of transformations of one degree under
    /// composition. Generators take the first indices (duplicates dropped),
    /// the rest follow in breadth-first order of right multiplication by
    /// generators. Labels are the image tuples.
    pub fn from_transformations(generators: &[Transformation]) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(other) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::MixedDegrees {
                first: degree,
                other: other.degree(),
            });
        }

        let mut elements: Vec<Transformation> = Vec::new();
        let mut index: HashMap<Transformation, usize> = HashMap::new();
        for g in generators {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                elements.push(g.clone());
            }
        }
        let gens = elements.clone();
        let mut cursor = 0;
        while cursor < elements.len() {
            let current = elements[cursor].clone();
            for g in &gens {
                let product = current.compose(g);
                if !index.contains_key(&product) {
                    index.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
            cursor += 1;
        }

        let size = elements.len();
        let mut table = Vec::with_capacity(size * size);
        for f in &elements {
            for g in &elements {
                table.push(index[&f.compose(g)]);
            }
        }
        Ok(Self {
            size,
            table,
            labels: Some(elements.iter().map(|t| t.to_string()).collect()),
        })
    }

    /// Trusted constructor for tables that are associative by construction
    /// (composition of functions). Checked in debug builds.
    pub(crate) fn from_trusted_parts(size: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Self {
        let semigroup = Self { size, table, labels };
        debug_assert!(semigroup.first_non_associative_triple().is_none());
        semigroup
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display string for an element: its label, or its index.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(labels) => labels[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// The semigroup with reversed multiplication, `a ∘ b = ba`.
    pub fn opposite(&self) -> Self {
        let n = self.size;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(b, a));
            }
        }
        Self {
            size: n,
            table,
            labels: self.labels.clone(),
        }
    }

    pub fn first_non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// `E(S)` in increasing index order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.is_idempotent(a)).collect()
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.size).find(|&u| (0..self.size).all(|a| self.mul(u, a) == a && self.mul(a, u) == a))
    }

    /// The natural partial order on idempotents: `e ≤ f` iff `ef = fe = e`.
    pub fn natural_leq(&self, e: usize, f: usize) -> Result<bool> {
        for x in [e, f] {
            if x >= self.size {
                return Err(Error::IndexOutOfRange {
                    value: x,
                    size: self.size,
                });
            }
            if !self.is_idempotent(x) {
                return Err(Error::NotIdempotent(x));
            }
        }
        Ok(self.mul(e, f) == e && self.mul(f, e) == e)
    }

    /// Green's preorder. `a ≤_R b` iff `a ∈ bS¹`, computed as `a = b` or
    /// `a ∈ bS` (the unit is never adjoined).
    pub fn green_preorder(&self, side: GreenSide) -> BinaryRelation {
        let n = self.size;
        let mut rel = BinaryRelation::identity(n);
        for b in 0..n {
            match side {
                GreenSide::R => {
                    for s in 0..n {
                        rel.insert(self.mul(b, s), b);
                    }
                }
                GreenSide::L => {
                    for s in 0..n {
                        rel.insert(self.mul(s, b), b);
                    }
                }
                GreenSide::J => {
                    let mut left_ideal = vec![b];
                    left_ideal.extend((0..n).map(|s| self.mul(s, b)));
                    for &x in &left_ideal {
                        rel.insert(x, b);
                        for s in 0..n {
                            rel.insert(self.mul(x, s), b);
                        }
                    }
                }
            }
        }
        rel
    }

    /// Green's equivalence: the preorder intersected with its transpose.
    pub fn green_equiv(&self, side: GreenSide) -> BinaryRelation {
        let pre = self.green_preorder(side);
        pre.intersection(&pre.transpose())
    }

    pub fn is_j_trivial(&self) -> bool {
        self.green_equiv(GreenSide::J) == BinaryRelation::identity(self.size)
    }

    pub fn is_r_trivial(&self) -> bool {
        self.green_equiv(GreenSide::R) == BinaryRelation::identity(self.size)
    }

    pub fn is_l_trivial(&self) -> bool {
        self.green_equiv(GreenSide::L) == BinaryRelation::identity(self.size)
    }
}

/// A total function on `[n] = {1, …, n}`, stored with 1-based images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidTransformation("degree must be positive".into()));
        }
        if let Some(&bad) = images.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::InvalidTransformation(format!(
                "image {bad} outside [1, {n}]"
            )));
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (1..=degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the point `i ∈ [n]`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// The distinct image points, sorted.
    pub fn image_set(&self) -> Vec<usize> {
        let mut im = self.images.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn same_kernel(&self, other: &Self) -> bool {
        let n = self.degree();
        (1..=n).all(|i| (1..=n).all(|j| (self.apply(i) == self.apply(j)) == (other.apply(i) == other.apply(j))))
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn left_zero_and_group_tables_are_semigroups() {
        let lz = FiniteSemigroup::from_cayley_table(&[vec![0, 0], vec![1, 1]], None).unwrap();
        assert_eq!(lz.size(), 2);
        assert_eq!(lz.idempotents(), vec![0, 1]);
        let z2 = FiniteSemigroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(z2.idempotents(), vec![0]);
    }

    #[test]
    fn non_associative_table_reports_first_triple() {
        // (0·0)·1 = 1·1 = 0 but 0·(0·1) = 0·0 = 1.
        let err = FiniteSemigroup::from_cayley_table(&[vec![1, 0], vec![0, 0]], None).unwrap_err();
        assert_eq!(err, Error::NonAssociative { a: 0, b: 0, c: 1 });
    }

    #[test]
    fn table_validation_errors() {
        assert_eq!(FiniteSemigroup::from_cayley_table(&[], None), Err(Error::EmptyTable));
        assert_eq!(
            FiniteSemigroup::from_cayley_table(&[vec![0, 2], vec![0, 0]], None),
            Err(Error::IndexOutOfRange { value: 2, size: 2 })
        );
        assert!(matches!(
            FiniteSemigroup::from_cayley_table(&[vec![0], vec![0, 0]], None),
            Err(Error::NotSquare { row: 0, .. })
        ));
    }

    #[test]
    fn transformation_closure_of_catalan_generators() {
        let s = FiniteSemigroup::from_transformations(&[t(&[2, 2, 3]), t(&[1, 3, 3])]).unwrap();
        let e1 = s.index_of_label("[2,2,3]").unwrap();
        let e2 = s.index_of_label("[1,3,3]").unwrap();
        assert_eq!((e1, e2), (0, 1));
        let e1e2 = s.index_of_label("[2,3,3]").expect("e1e2 present");
        assert_eq!(s.mul(e1, e2), e1e2);
        assert!(s.index_of_label("[3,3,3]").is_some());
        // identity is not generated
        assert!(s.index_of_label("[1,2,3]").is_none());
        assert_eq!(s.size(), 4);
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let s = FiniteSemigroup::from_transformations(&[Transformation::identity(3)]).unwrap();
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn closure_rejects_mixed_degrees_and_empty() {
        assert_eq!(
            FiniteSemigroup::from_transformations(&[t(&[1, 1]), t(&[1, 1, 1])]),
            Err(Error::MixedDegrees { first: 2, other: 3 })
        );
        assert_eq!(FiniteSemigroup::from_transformations(&[]), Err(Error::NoGenerators));
    }

    #[test]
    fn closure_table_matches_pointwise_composition() {
        let gens = [t(&[2, 1, 3, 4]), t(&[1, 1, 3, 3]), t(&[4, 2, 3, 1])];
        let s = FiniteSemigroup::from_transformations(&gens).unwrap();
        let elements: Vec<Transformation> = s
            .labels()
            .unwrap()
            .iter()
            .map(|l| {
                let inner = &l[1..l.len() - 1];
                t(&inner.split(',').map(|x| x.parse().unwrap()).collect::<Vec<_>>())
            })
            .collect();
        for a in 0..s.size() {
            for b in 0..s.size() {
                assert_eq!(elements[s.mul(a, b)], elements[a].compose(&elements[b]));
            }
        }
    }

    #[test]
    fn natural_leq_examples() {
        let s = FiniteSemigroup::from_transformations(&[
            Transformation::identity(3),
            t(&[3, 3, 3]),
        ])
        .unwrap();
        let id = s.index_of_label("[1,2,3]").unwrap();
        let z = s.index_of_label("[3,3,3]").unwrap();
        assert!(s.natural_leq(z, id).unwrap());
        assert!(!s.natural_leq(id, z).unwrap());
        assert!(s.natural_leq(id, id).unwrap());
        let z2 = FiniteSemigroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(z2.natural_leq(0, 1), Err(Error::NotIdempotent(1)));
    }

    #[test]
    fn identity_is_r_maximum_in_a_monoid() {
        let z2 = FiniteSemigroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
        let r = z2.green_preorder(GreenSide::R);
        assert!((0..2).all(|a| r.contains(a, 0)));
        assert!(!z2.is_r_trivial());
        let one = FiniteSemigroup::from_cayley_table(&[vec![0]], None).unwrap();
        assert!(one.is_j_trivial() && one.is_r_trivial());
    }

    #[test]
    fn green_equivalence_is_symmetric_part_of_preorder() {
        let lz = FiniteSemigroup::from_cayley_table(&[vec![0, 0], vec![1, 1]], None).unwrap();
        for side in [GreenSide::R, GreenSide::L, GreenSide::J] {
            let pre = lz.green_preorder(side);
            let eq = lz.green_equiv(side);
            for a in 0..2 {
                for b in 0..2 {
                    assert_eq!(eq.contains(a, b), pre.contains(a, b) && pre.contains(b, a));
                }
            }
        }
        // left zero: aS = {a}, so R is trivial but L is universal
        assert!(lz.is_r_trivial());
        assert!(!lz.is_l_trivial());
    }
}
