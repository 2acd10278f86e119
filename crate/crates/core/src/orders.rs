//! The restriction relations `⊴_l`, `⊴_r` and `≤_l`, order diagnostics, and
//! the choice of a partial order containing `⊴_l`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::fountain::EFountainStructure;
use crate::relation::BinaryRelation;
use crate::semigroup::GreenSide;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderDiagnostics {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub is_partial_order: bool,
    /// An element not related to itself.
    pub reflexive_witness: Option<usize>,
    /// Distinct `(a, b)` related both ways.
    pub antisymmetric_witness: Option<(usize, usize)>,
    /// `(a, b, c)` with `a R b`, `b R c` but not `a R c`.
    pub transitive_witness: Option<(usize, usize, usize)>,
}

/// Property flags of a relation, each failure with its lexicographically
/// first witness.
pub fn diagnose(rel: &BinaryRelation) -> OrderDiagnostics {
    let n = rel.size();
    let reflexive_witness = (0..n).find(|&a| !rel.contains(a, a));
    let antisymmetric_witness = rel.pairs().find(|&(a, b)| a != b && rel.contains(b, a));
    let mut transitive_witness = None;
    'outer: for (a, b) in rel.pairs() {
        for c in rel.above(b) {
            if !rel.contains(a, c) {
                transitive_witness = Some((a, b, c));
                break 'outer;
            }
        }
    }
    let reflexive = reflexive_witness.is_none();
    let antisymmetric = antisymmetric_witness.is_none();
    let transitive = transitive_witness.is_none();
    OrderDiagnostics {
        reflexive,
        antisymmetric,
        transitive,
        is_partial_order: reflexive && antisymmetric && transitive,
        reflexive_witness,
        antisymmetric_witness,
        transitive_witness,
    }
}

/// `a ⊴_l b` iff `a = be` for some `e ∈ E`; stored as the pair `(a, b)`.
/// Cross-checked against the characterisation `a = ba*`.
pub fn tri_left(f: &EFountainStructure) -> Result<BinaryRelation> {
    let n = f.size();
    let mut by_e = BinaryRelation::empty(n);
    for b in 0..n {
        for &e in f.e_set() {
            by_e.insert(f.mul(b, e), b);
        }
    }
    let by_star = BinaryRelation::from_fn(n, |a, b| a == f.mul(b, f.star(a)));
    if by_e != by_star {
        return Err(Error::InternalMismatch(
            "⊴_l via ∃e: a = be disagrees with a = ba*".into(),
        ));
    }
    Ok(by_e)
}

/// `a ⊴_r b` iff `a = eb` for some `e ∈ E`, cross-checked against `a = a⁺b`.
pub fn tri_right(f: &EFountainStructure) -> Result<BinaryRelation> {
    tri_left(&f.dual())
}

/// `{ c : c ⊴_l a } = { ae : e ∈ E }`, sorted. Members have pairwise
/// distinct stars.
pub fn tri_below(a: usize, f: &EFountainStructure) -> Vec<usize> {
    let mut below: Vec<usize> = f.e_set().iter().map(|&e| f.mul(a, e)).collect();
    below.sort_unstable();
    below.dedup();
    let mut stars: Vec<usize> = below.iter().map(|&c| f.star(c)).collect();
    stars.sort_unstable();
    stars.dedup();
    assert_eq!(
        stars.len(),
        below.len(),
        "two elements below {a} share a star"
    );
    below
}

/// `a ≤_l b` iff `a* ≤ b*` and `a = ba*`. Asserted to lie inside `⊴_l`, and
/// to equal it when `E` is a subsemilattice.
pub fn leq_l(f: &EFountainStructure) -> Result<BinaryRelation> {
    let n = f.size();
    let s = f.semigroup();
    let rel = BinaryRelation::from_fn(n, |a, b| {
        let (sa, sb) = (f.star(a), f.star(b));
        s.mul(sa, sb) == sa && s.mul(sb, sa) == sa && a == f.mul(b, sa)
    });
    let tri = tri_left(f)?;
    if let Some((a, b)) = rel.first_not_in(&tri) {
        return Err(Error::InternalMismatch(format!(
            "{a} ≤_l {b} but not {a} ⊴_l {b}"
        )));
    }
    if f.is_subsemilattice() && rel != tri {
        return Err(Error::TheoremViolation(
            "E is a subsemilattice but ≤_l differs from ⊴_l".into(),
        ));
    }
    Ok(rel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingSource {
    /// The semigroup is R-trivial and `≤_R` is used.
    GreenR,
    /// The reflexive-transitive closure of `⊴_l` is antisymmetric.
    TransitiveClosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingOrder {
    Found {
        order: BinaryRelation,
        source: EmbeddingSource,
    },
    /// `⊴_l` lies in no partial order; `cycle` is a closed walk
    /// `c₀ ⊴_l c₁ ⊴_l … ⊴_l c₀` through distinct elements.
    NoEmbedding { cycle: Vec<usize> },
}

impl EmbeddingOrder {
    pub fn order(&self) -> Option<&BinaryRelation> {
        match self {
            EmbeddingOrder::Found { order, .. } => Some(order),
            EmbeddingOrder::NoEmbedding { .. } => None,
        }
    }
}

/// A partial order containing `⊴_l`: `≤_R` when `S` is R-trivial, otherwise
/// the reflexive-transitive closure of `⊴_l` if that is antisymmetric.
pub fn embedding_order(f: &EFountainStructure) -> Result<EmbeddingOrder> {
    let tri = tri_left(f)?;
    let s = f.semigroup();
    if s.is_r_trivial() {
        let order = s.green_preorder(GreenSide::R);
        if let Some((a, b)) = tri.first_not_in(&order) {
            return Err(Error::TheoremViolation(format!(
                "{a} ⊴_l {b} but not {a} ≤_R {b} in an R-trivial semigroup"
            )));
        }
        return Ok(EmbeddingOrder::Found {
            order,
            source: EmbeddingSource::GreenR,
        });
    }
    let closure = tri.reflexive_transitive_closure();
    let two_way = closure.pairs().find(|&(a, b)| a != b && closure.contains(b, a));
    match two_way {
        None => Ok(EmbeddingOrder::Found {
            order: closure,
            source: EmbeddingSource::TransitiveClosure,
        }),
        Some((a, b)) => {
            let mut cycle = shortest_path(&tri, a, b);
            let back = shortest_path(&tri, b, a);
            cycle.extend_from_slice(&back[1..]);
            Ok(EmbeddingOrder::NoEmbedding { cycle })
        }
    }
}

/// Shortest `from = x₀ R x₁ R … R xₖ = to` by breadth-first search.
fn shortest_path(rel: &BinaryRelation, from: usize, to: usize) -> Vec<usize> {
    let n = rel.size();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for y in rel.above(x) {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}
