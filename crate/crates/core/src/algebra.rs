//! Semigroup and category algebras over an exact ring, the change of basis
//! `φ(a) = Σ_{c ⊴_l a} C(c)`, incidence algebras of finite posets with
//! Möbius inversion, and the inverse map `ψ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::fountain::EFountainStructure;
use crate::orders::{self, EmbeddingOrder, EmbeddingSource};
use crate::relation::BinaryRelation;
use crate::ring::Ring;
use crate::semigroup::FiniteSemigroup;
use crate::verdict::Verdict;

/// Which free module an element lives in, with its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Semigroup(usize),
    Category(usize),
}

impl Basis {
    pub fn dimension(&self) -> usize {
        match *self {
            Basis::Semigroup(n) | Basis::Category(n) => n,
        }
    }
}

/// A finite linear combination of basis elements. Zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct AlgebraElement<R: Ring> {
    ring: R,
    basis: Basis,
    coeffs: BTreeMap<usize, R::Elem>,
}

impl<R: Ring> PartialEq for AlgebraElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.basis == other.basis && self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{{", self.basis)?;
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{i}")?;
        }
        f.write_str("}")
    }
}

impl<R: Ring> AlgebraElement<R> {
    pub fn zero(ring: &R, basis: Basis) -> Self {
        Self {
            ring: ring.clone(),
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(ring: &R, basis: Basis, index: usize) -> Result<Self> {
        Self::from_terms(ring, basis, [(index, ring.one())])
    }

    /// Sums the given terms; repeated indices accumulate.
    pub fn from_terms(ring: &R, basis: Basis, terms: impl IntoIterator<Item = (usize, R::Elem)>) -> Result<Self> {
        let mut x = Self::zero(ring, basis);
        for (i, c) in terms {
            if i >= basis.dimension() {
                return Err(Error::IndexOutOfRange {
                    value: i,
                    size: basis.dimension(),
                });
            }
            x.add_term(i, &c);
        }
        Ok(x)
    }

    fn add_term(&mut self, index: usize, c: &R::Elem) {
        let ring = &self.ring;
        let sum = match self.coeffs.get(&index) {
            Some(old) => ring.add(old, c),
            None => c.clone(),
        };
        if ring.is_zero(&sum) {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, sum);
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, index: usize) -> R::Elem {
        self.coeffs.get(&index).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn require_same_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis || self.ring != other.ring {
            return Err(Error::BasisMismatch(format!(
                "{:?} over {} vs {:?} over {}",
                self.basis,
                self.ring.name(),
                other.basis,
                other.ring.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_basis(other)?;
        let mut sum = self.clone();
        for (i, c) in other.terms() {
            sum.add_term(i, c);
        }
        Ok(sum)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.ring.from_i64(-1)))
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.basis);
        for (i, c) in self.terms() {
            out.add_term(i, &self.ring.mul(k, c));
        }
        out
    }
}

/// Product in the semigroup algebra: the bilinear extension of the Cayley
/// table.
pub fn semigroup_mult<R: Ring>(
    x: &AlgebraElement<R>,
    y: &AlgebraElement<R>,
    s: &FiniteSemigroup,
) -> Result<AlgebraElement<R>> {
    x.require_same_basis(y)?;
    if x.basis != Basis::Semigroup(s.size()) {
        return Err(Error::BasisMismatch(format!(
            "{:?} is not the basis of a semigroup of size {}",
            x.basis,
            s.size()
        )));
    }
    let ring = &x.ring;
    let mut out = AlgebraElement::zero(ring, x.basis);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            out.add_term(s.mul(a, b), &ring.mul(ca, cb));
        }
    }
    Ok(out)
}

/// Product in the category algebra: composable pairs compose, the rest
/// contribute zero.
pub fn category_mult<R: Ring>(
    x: &AlgebraElement<R>,
    y: &AlgebraElement<R>,
    c: &FiniteCategory,
) -> Result<AlgebraElement<R>> {
    x.require_same_basis(y)?;
    if x.basis != Basis::Category(c.morphism_count()) {
        return Err(Error::BasisMismatch(format!(
            "{:?} is not the basis of a category with {} morphisms",
            x.basis,
            c.morphism_count()
        )));
    }
    let ring = &x.ring;
    let mut out = AlgebraElement::zero(ring, x.basis);
    for (m2, c2) in x.terms() {
        for (m1, c1) in y.terms() {
            if let Some(m) = c.compose(m2, m1) {
                out.add_term(m, &ring.mul(c2, c1));
            }
        }
    }
    Ok(out)
}

/// The change of basis `φ: 𝕜S → 𝕜C`, with the supports `{c : c ⊴_l a}`
/// precomputed.
pub struct ChangeOfBasis<'a> {
    structure: &'a EFountainStructure,
    category: &'a FiniteCategory,
    supports: Vec<Vec<usize>>,
}

impl<'a> ChangeOfBasis<'a> {
    pub fn new(f: &'a EFountainStructure, c: &'a FiniteCategory) -> Result<Self> {
        f.require_congruence()?;
        if c.morphism_count() != f.size() || c.objects() != f.e_set() {
            return Err(Error::BasisMismatch(
                "category was not built from this structure".into(),
            ));
        }
        let supports = (0..f.size()).map(|a| orders::tri_below(a, f)).collect();
        Ok(Self {
            structure: f,
            category: c,
            supports,
        })
    }

    pub fn structure(&self) -> &EFountainStructure {
        self.structure
    }

    pub fn category(&self) -> &FiniteCategory {
        self.category
    }

    pub fn support(&self, a: usize) -> &[usize] {
        &self.supports[a]
    }

    pub fn phi_basis<R: Ring>(&self, ring: &R, a: usize) -> AlgebraElement<R> {
        let mut out = AlgebraElement::zero(ring, Basis::Category(self.category.morphism_count()));
        for &c in &self.supports[a] {
            out.add_term(c, &ring.one());
        }
        out
    }

    pub fn phi<R: Ring>(&self, x: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
        if x.basis != Basis::Semigroup(self.structure.size()) {
            return Err(Error::BasisMismatch(format!(
                "φ expects a semigroup algebra element, got {:?}",
                x.basis
            )));
        }
        let ring = &x.ring;
        let mut out = AlgebraElement::zero(ring, Basis::Category(self.category.morphism_count()));
        for (a, k) in x.terms() {
            for &c in &self.supports[a] {
                out.add_term(c, k);
            }
        }
        Ok(out)
    }

    /// First `(b, a)` with `φ(ba) ≠ φ(b)φ(a)`. Both sides have all
    /// coefficients equal to one on their supports before reduction, so the
    /// product is tallied in `usize` and mapped into the ring once.
    pub fn first_non_multiplicative_pair<R: Ring>(&self, ring: &R) -> Result<Option<(usize, usize)>> {
        let n = self.structure.size();
        let m = self.category.morphism_count();
        let mut counts = vec![0i64; m];
        let mut in_lhs = vec![false; m];
        for b in 0..n {
            for a in 0..n {
                counts.iter_mut().for_each(|c| *c = 0);
                for &c in &self.supports[b] {
                    for &d in &self.supports[a] {
                        if let Some(x) = self.category.compose(c, d) {
                            counts[x] += 1;
                        }
                    }
                }
                let lhs = &self.supports[self.structure.mul(b, a)];
                lhs.iter().for_each(|&x| in_lhs[x] = true);
                let differs = (0..m).any(|x| {
                    let expected = if in_lhs[x] { ring.one() } else { ring.zero() };
                    ring.from_i64(counts[x]) != expected
                });
                lhs.iter().for_each(|&x| in_lhs[x] = false);
                if differs {
                    return Ok(Some((b, a)));
                }
            }
        }
        Ok(None)
    }

    /// Whether `φ` is injective, decided by the rank of its 0/1 matrix over
    /// `ℚ`. A full rank modulo a large prime settles it without rational
    /// arithmetic.
    pub fn is_injective(&self) -> bool {
        let n = self.structure.size();
        let mut seen = std::collections::HashSet::new();
        if !self.supports.iter().all(|s| seen.insert(s.clone())) {
            return false;
        }
        let rows: Vec<Vec<bool>> = self
            .supports
            .iter()
            .map(|s| {
                let mut row = vec![false; self.category.morphism_count()];
                for &c in s {
                    row[c] = true;
                }
                row
            })
            .collect();
        rank_mod_prime(&rows) == n || rank_rational(&rows) == n
    }
}

const RANK_PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn rank_mod_prime(rows: &[Vec<bool>]) -> usize {
    let p = RANK_PRIME as u128;
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&b| b as u64).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let pow = |mut base: u128, mut exp: u128| {
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow(m[rank][col] as u128, p - 2);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col] as u128 * inv % p;
                for k in col..cols {
                    let sub = factor * m[rank][k] as u128 % p;
                    m[r][k] = ((m[r][k] as u128 + p - sub) % p) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_rational(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&b| BigRational::from_integer((b as i64).into())).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, pivot);
        let lead = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &lead;
                for k in col..cols {
                    let sub = &factor * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `φ` applied to an element of `𝕜S`.
pub fn phi<R: Ring>(x: &AlgebraElement<R>, f: &EFountainStructure, c: &FiniteCategory) -> Result<AlgebraElement<R>> {
    ChangeOfBasis::new(f, c)?.phi(x)
}

/// Checks `φ(ba) = φ(b)φ(a)` on all basis pairs and asserts that the answer
/// agrees with the generalized right ample identity.
pub fn verify_homomorphism<R: Ring>(
    f: &EFountainStructure,
    c: &FiniteCategory,
    ring: &R,
) -> Result<Verdict<(usize, usize)>> {
    let change = ChangeOfBasis::new(f, c)?;
    let verdict = Verdict::from_witness(change.first_non_multiplicative_pair(ring)?);
    let generalized = f.check_generalized_right_ample()?;
    if verdict.holds() != generalized.holds() {
        return Err(Error::TheoremViolation(format!(
            "φ multiplicative = {}, generalized right ample = {}",
            verdict.holds(),
            generalized.holds()
        )));
    }
    Ok(verdict)
}

/// A finite partial order with a fixed linear extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    relation: BinaryRelation,
    linear_extension: Vec<usize>,
}

impl Poset {
    pub fn new(relation: BinaryRelation) -> Result<Self> {
        let d = orders::diagnose(&relation);
        if !d.is_partial_order {
            return Err(Error::NotPartialOrder(format!(
                "reflexive witness {:?}, antisymmetric witness {:?}, transitive witness {:?}",
                d.reflexive_witness, d.antisymmetric_witness, d.transitive_witness
            )));
        }
        // Kahn's algorithm, smallest available index first.
        let n = relation.size();
        let mut indegree: Vec<usize> = (0..n).map(|b| relation.below(b).filter(|&a| a != b).count()).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&b| indegree[b] == 0).collect();
        let mut linear_extension = Vec::with_capacity(n);
        while let Some(a) = ready.pop_first() {
            linear_extension.push(a);
            for b in relation.above(a).filter(|&b| b != a) {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        debug_assert_eq!(linear_extension.len(), n);
        Ok(Self {
            relation,
            linear_extension,
        })
    }

    pub fn size(&self) -> usize {
        self.relation.size()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.relation.contains(a, b)
    }

    pub fn relation(&self) -> &BinaryRelation {
        &self.relation
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }
}

/// An element of the incidence algebra `𝕜[⪯]`: a function on comparable
/// pairs `(a, b)`, `a ⪯ b`.
#[derive(Clone)]
pub struct IncidenceAlgebraElement<R: Ring> {
    ring: R,
    poset: Arc<Poset>,
    values: BTreeMap<(usize, usize), R::Elem>,
}

impl<R: Ring> PartialEq for IncidenceAlgebraElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.poset == other.poset && self.values == other.values
    }
}

impl<R: Ring> fmt::Debug for IncidenceAlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.values.iter()).finish()
    }
}

impl<R: Ring> IncidenceAlgebraElement<R> {
    /// Builds an element from values on pairs; pairs outside the order are
    /// rejected and zeros dropped.
    pub fn from_values(
        ring: &R,
        poset: Arc<Poset>,
        values: impl IntoIterator<Item = ((usize, usize), R::Elem)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((a, b), v) in values {
            if a >= poset.size() || b >= poset.size() {
                return Err(Error::IndexOutOfRange {
                    value: a.max(b),
                    size: poset.size(),
                });
            }
            if !poset.leq(a, b) {
                return Err(Error::NotContained { a, b });
            }
            if !ring.is_zero(&v) {
                map.insert((a, b), v);
            }
        }
        Ok(Self {
            ring: ring.clone(),
            poset,
            values: map,
        })
    }

    /// The unit `δ`.
    pub fn delta(ring: &R, poset: Arc<Poset>) -> Self {
        let n = poset.size();
        Self::from_values(ring, poset, (0..n).map(|a| ((a, a), ring.one()))).expect("diagonal lies in any order")
    }

    /// The zeta function of the order itself.
    pub fn zeta(ring: &R, poset: Arc<Poset>) -> Self {
        let pairs: Vec<_> = poset.relation().pairs().collect();
        Self::from_values(ring, poset, pairs.into_iter().map(|p| (p, ring.one()))).expect("pairs of the order")
    }

    /// Indicator of a relation contained in the order.
    pub fn indicator(ring: &R, poset: Arc<Poset>, rel: &BinaryRelation) -> Result<Self> {
        if rel.size() != poset.size() {
            return Err(Error::BasisMismatch("relation and order have different sizes".into()));
        }
        let pairs: Vec<_> = rel.pairs().collect();
        Self::from_values(ring, poset, pairs.into_iter().map(|p| (p, ring.one())))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn value(&self, a: usize, b: usize) -> R::Elem {
        self.values.get(&(a, b)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values.keys().copied()
    }

    /// Convolution `(f ⋆ g)(a, b) = Σ_{a⪯c⪯b} f(a, c) g(c, b)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring || self.poset != other.poset {
            return Err(Error::BasisMismatch("incidence elements over different orders".into()));
        }
        let n = self.poset.size();
        let mut rows: Vec<Vec<(usize, &R::Elem)>> = vec![Vec::new(); n];
        for (&(c, b), v) in &other.values {
            rows[c].push((b, v));
        }
        let ring = &self.ring;
        let mut acc: BTreeMap<(usize, usize), R::Elem> = BTreeMap::new();
        for (&(a, c), fv) in &self.values {
            for &(b, gv) in &rows[c] {
                let term = ring.mul(fv, gv);
                acc.entry((a, b))
                    .and_modify(|x| *x = ring.add(x, &term))
                    .or_insert(term);
            }
        }
        acc.retain(|_, v| !ring.is_zero(v));
        Ok(Self {
            ring: ring.clone(),
            poset: self.poset.clone(),
            values: acc,
        })
    }

    /// Two-sided inverse, by substitution along the linear extension from the
    /// top down. Requires every diagonal value to be a unit.
    pub fn mobius_inverse(&self) -> Result<Self> {
        let ring = &self.ring;
        let n = self.poset.size();
        let mut diag_inv = Vec::with_capacity(n);
        for x in 0..n {
            diag_inv.push(
                ring.unit_inverse(&self.value(x, x))
                    .ok_or(Error::NonInvertibleDiagonal(x))?,
            );
        }
        let mut strict_rows: Vec<Vec<(usize, &R::Elem)>> = vec![Vec::new(); n];
        for (&(a, c), v) in &self.values {
            if a != c {
                strict_rows[a].push((c, v));
            }
        }
        // inverse[a][b] for a ⪯ b, filled for a in reverse linear order
        let mut inverse: Vec<Vec<Option<R::Elem>>> = vec![vec![None; n]; n];
        for &a in self.poset.linear_extension().iter().rev() {
            for b in self.poset.relation().above(a) {
                let value = if a == b {
                    diag_inv[a].clone()
                } else {
                    let mut sum = ring.zero();
                    for &(c, fv) in &strict_rows[a] {
                        if let Some(g) = &inverse[c][b] {
                            sum = ring.add(&sum, &ring.mul(fv, g));
                        }
                    }
                    ring.neg(&ring.mul(&diag_inv[a], &sum))
                };
                inverse[a][b] = Some(value);
            }
        }
        let values = inverse
            .into_iter()
            .enumerate()
            .flat_map(|(a, row)| row.into_iter().enumerate().filter_map(move |(b, v)| v.map(|v| ((a, b), v))));
        Self::from_values(ring, self.poset.clone(), values)
    }
}

/// `ζ_l(a, b) = 1` if `a ⊴_l b`, else 0, in the incidence algebra of an order
/// containing `⊴_l`.
pub fn zeta_l<R: Ring>(f: &EFountainStructure, poset: Arc<Poset>, ring: &R) -> Result<IncidenceAlgebraElement<R>> {
    let tri = orders::tri_left(f)?;
    if let Some((a, b)) = tri.first_not_in(poset.relation()) {
        return Err(Error::NotContained { a, b });
    }
    IncidenceAlgebraElement::indicator(ring, poset, &tri)
}

/// The inverse change of basis `ψ(C(a)) = Σ_{b⪯a} ζ_l⁻¹(b, a) b`.
pub struct Psi<R: Ring> {
    ring: R,
    size: usize,
    zeta: IncidenceAlgebraElement<R>,
    zeta_inverse: IncidenceAlgebraElement<R>,
}

impl<R: Ring> Psi<R> {
    pub fn new(f: &EFountainStructure, poset: Arc<Poset>, ring: &R) -> Result<Self> {
        let zeta = zeta_l(f, poset, ring)?;
        let zeta_inverse = zeta.mobius_inverse()?;
        Ok(Self {
            ring: ring.clone(),
            size: f.size(),
            zeta,
            zeta_inverse,
        })
    }

    pub fn zeta(&self) -> &IncidenceAlgebraElement<R> {
        &self.zeta
    }

    pub fn zeta_inverse(&self) -> &IncidenceAlgebraElement<R> {
        &self.zeta_inverse
    }

    pub fn psi_basis(&self, a: usize) -> AlgebraElement<R> {
        let mut out = AlgebraElement::zero(&self.ring, Basis::Semigroup(self.size));
        for b in self.zeta_inverse.poset().relation().below(a) {
            out.add_term(b, &self.zeta_inverse.value(b, a));
        }
        out
    }

    pub fn psi(&self, y: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
        if y.basis != Basis::Category(self.size) || y.ring != self.ring {
            return Err(Error::BasisMismatch(format!(
                "ψ expects a category algebra element of dimension {}, got {:?}",
                self.size, y.basis
            )));
        }
        let mut out = AlgebraElement::zero(&self.ring, Basis::Semigroup(self.size));
        for (a, k) in y.terms() {
            for (b, v) in self.psi_basis(a).terms() {
                out.add_term(b, &self.ring.mul(k, v));
            }
        }
        Ok(out)
    }
}

/// `ψ` applied to an element of `𝕜C`, for a partial order containing `⊴_l`.
pub fn psi<R: Ring>(y: &AlgebraElement<R>, f: &EFountainStructure, poset: Arc<Poset>) -> Result<AlgebraElement<R>> {
    Psi::new(f, poset, y.ring())?.psi(y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub embedding: Option<EmbeddingSource>,
    pub homomorphism: Verdict<(usize, usize)>,
    /// `ζ_l ⋆ ζ_l⁻¹ = ζ_l⁻¹ ⋆ ζ_l = δ`.
    pub mobius_inverse_ok: bool,
    /// `ψ(φ(a)) = a` for every `a ∈ S`.
    pub psi_after_phi_identity: bool,
    /// `φ(ψ(C(a))) = C(a)` for every morphism.
    pub phi_after_psi_identity: bool,
    pub is_isomorphism: bool,
    /// Why `is_isomorphism` is false, if it is.
    pub reason: Option<String>,
}

/// Decides whether `φ` is an algebra isomorphism, using [`embedding_order`]
/// for the order. Without an embedding the answer is false with a reason.
///
/// [`embedding_order`]: crate::orders::embedding_order
pub fn verify_isomorphism<R: Ring>(f: &EFountainStructure, c: &FiniteCategory, ring: &R) -> Result<IsomorphismReport> {
    match orders::embedding_order(f)? {
        EmbeddingOrder::Found { order, source } => {
            let mut report = verify_isomorphism_with_order(f, c, Arc::new(Poset::new(order)?), ring)?;
            report.embedding = Some(source);
            Ok(report)
        }
        EmbeddingOrder::NoEmbedding { cycle } => {
            let homomorphism = verify_homomorphism(f, c, ring)?;
            Ok(IsomorphismReport {
                embedding: None,
                homomorphism,
                mobius_inverse_ok: false,
                psi_after_phi_identity: false,
                phi_after_psi_identity: false,
                is_isomorphism: false,
                reason: Some(format!("⊴_l lies in no partial order (cycle {cycle:?})")),
            })
        }
    }
}

pub fn verify_isomorphism_with_order<R: Ring>(
    f: &EFountainStructure,
    c: &FiniteCategory,
    poset: Arc<Poset>,
    ring: &R,
) -> Result<IsomorphismReport> {
    let change = ChangeOfBasis::new(f, c)?;
    let homomorphism = verify_homomorphism(f, c, ring)?;
    let psi = Psi::new(f, poset.clone(), ring)?;
    let delta = IncidenceAlgebraElement::delta(ring, poset);
    let mobius_inverse_ok = psi.zeta().convolve(psi.zeta_inverse())? == delta
        && psi.zeta_inverse().convolve(psi.zeta())? == delta;

    let n = f.size();
    let mut psi_after_phi_identity = true;
    let mut phi_after_psi_identity = true;
    for a in 0..n {
        let basis_s = AlgebraElement::basis_element(ring, Basis::Semigroup(n), a)?;
        if psi.psi(&change.phi(&basis_s)?)? != basis_s {
            psi_after_phi_identity = false;
        }
        let basis_c = AlgebraElement::basis_element(ring, Basis::Category(n), a)?;
        if change.phi(&psi.psi(&basis_c)?)? != basis_c {
            phi_after_psi_identity = false;
        }
    }
    if !(mobius_inverse_ok && psi_after_phi_identity && phi_after_psi_identity) {
        return Err(Error::TheoremViolation(
            "⊴_l lies in a partial order but ψ is not inverse to φ".into(),
        ));
    }
    let is_isomorphism = homomorphism.holds();
    let reason = (!is_isomorphism).then(|| {
        let (b, a) = *homomorphism.witness().expect("failure carries witness");
        format!("φ is not multiplicative at b={b}, a={a}")
    });
    Ok(IsomorphismReport {
        embedding: None,
        homomorphism,
        mobius_inverse_ok,
        psi_after_phi_identity,
        phi_after_psi_identity,
        is_isomorphism,
        reason,
    })
}
