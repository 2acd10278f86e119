//! The Catalan monoid `ℂT_d` of order-preserving, order-increasing maps on
//! `[d]`, its idempotents `e_Z`, the elements `f_{X,Y}`, and the subset
//! order `⪯`.
//!
//! Everything here is parametrised by the ambient degree `d`. Subsets live
//! in `[d−1]`, so the order matched against `ℂT_d` is `⪯_{d−1}`, and the
//! value `d` plays the role of the "overflow" point `n+1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{self, Poset};
use crate::category::{build_category, FiniteCategory};
use crate::error::{Error, Result};
use crate::fountain::{analyze_with_all_idempotents, EFountainStructure};
use crate::orders::{self, EmbeddingSource};
use crate::relation::BinaryRelation;
use crate::ring::Ring;
use crate::semigroup::{FiniteSemigroup, GreenSide, Transformation};
use crate::verdict::Verdict;

pub const MAX_DEGREE: usize = 8;

/// A subset of `{1, …, 32}` as a bitmask; bit `i−1` stands for `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u32);

impl Subset {
    pub fn empty() -> Self {
        Subset(0)
    }

    /// `[n] = {1, …, n}`.
    pub fn full(n: usize) -> Self {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn from_elements(elements: &[usize]) -> Self {
        Subset(elements.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_within(&self, n: usize) -> bool {
        self.0 & !Subset::full(n).0 == 0
    }

    /// All subsets of `[n]`, in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << n).map(Subset)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `X ⪯ Y`: equal sizes and `xᵢ ≤ yᵢ` in sorted order.
pub fn preceq(x: Subset, y: Subset) -> bool {
    let (xs, ys) = (x.elements(), y.elements());
    xs.len() == ys.len() && xs.iter().zip(&ys).all(|(a, b)| a <= b)
}

/// The `n`-th Catalan number `C(2n, n)/(n+1)`.
pub fn catalan_number(n: usize) -> u64 {
    (0..n as u64).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[derive(Clone, Debug)]
pub struct CatalanMonoid {
    degree: usize,
    semigroup: FiniteSemigroup,
    elements: Vec<Transformation>,
    pairs: Vec<(Subset, Subset)>,
    index: HashMap<Vec<usize>, usize>,
}

impl CatalanMonoid {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, a: usize) -> &Transformation {
        &self.elements[a]
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    /// The pair `(X, Y)` with `a = f_{X,Y}`.
    pub fn pair(&self, a: usize) -> (Subset, Subset) {
        self.pairs[a]
    }

    pub fn pairs(&self) -> &[(Subset, Subset)] {
        &self.pairs
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t.images()).copied()
    }

    /// Index of `e_Z`.
    pub fn idempotent_index(&self, z: Subset) -> Result<usize> {
        let e = e_z(z, self.degree)?;
        Ok(self.index_of(&e).expect("e_Z lies in the monoid"))
    }
}

fn is_catalan_map(images: &[usize]) -> bool {
    images
        .iter()
        .enumerate()
        .all(|(i, &v)| v > i && (i == 0 || images[i - 1] <= v))
}

/// Enumerates `ℂT_d` directly, elements ordered lexicographically by image
/// tuple, with `fg = f∘g`.
pub fn generate_catalan(degree: usize) -> Result<CatalanMonoid> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    fn extend(prefix: &mut Vec<usize>, degree: usize, out: &mut Vec<Vec<usize>>) {
        let i = prefix.len() + 1;
        if i > degree {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1).max(i);
        for v in lo..=degree {
            prefix.push(v);
            extend(prefix, degree, out);
            prefix.pop();
        }
    }
    let mut tuples = Vec::new();
    extend(&mut Vec::with_capacity(degree), degree, &mut tuples);

    let index: HashMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let n = tuples.len();
    let mut table = Vec::with_capacity(n * n);
    let mut composed = vec![0; degree];
    for f in &tuples {
        for g in &tuples {
            for (slot, &gi) in composed.iter_mut().zip(g) {
                *slot = f[gi - 1];
            }
            table.push(index[&composed]);
        }
    }
    let elements: Vec<Transformation> = tuples
        .into_iter()
        .map(|t| Transformation::new(t).expect("images lie in [d]"))
        .collect();
    let labels = elements.iter().map(Transformation::to_string).collect();
    let pairs = elements
        .iter()
        .map(|f| pair_from_f(f).expect("enumerated maps are order-preserving and increasing"))
        .collect();
    Ok(CatalanMonoid {
        degree,
        semigroup: FiniteSemigroup::from_trusted_parts(n, table, Some(labels)),
        elements,
        pairs,
        index,
    })
}

/// `e_Z(i) = min{z ∈ Z ∪ {d} : i ≤ z}` for `Z ⊆ [d−1]`.
pub fn e_z(z: Subset, degree: usize) -> Result<Transformation> {
    if degree == 0 || !z.is_within(degree - 1) {
        return Err(Error::InvalidArgument(format!("{z} is not a subset of [{}]", degree.saturating_sub(1))));
    }
    let images = (1..=degree)
        .map(|i| (i..degree).find(|&v| z.contains(v)).unwrap_or(degree))
        .collect();
    let e = Transformation::new(images)?;
    assert!(e.is_idempotent());
    assert_eq!(image_without_top(&e), z);
    Ok(e)
}

fn image_without_top(f: &Transformation) -> Subset {
    let d = f.degree();
    Subset::from_elements(&f.image_set().into_iter().filter(|&v| v != d).collect::<Vec<_>>())
}

/// `f_{X,Y}`: sends `(x_{j−1}, x_j]` to `y_j` and everything above `x_k` to
/// `d`.
pub fn f_from_pair(x: Subset, y: Subset, degree: usize) -> Result<Transformation> {
    if degree == 0 || !x.is_within(degree - 1) || !y.is_within(degree - 1) {
        return Err(Error::InvalidArgument(format!(
            "({x}, {y}) are not subsets of [{}]",
            degree.saturating_sub(1)
        )));
    }
    if !preceq(x, y) {
        return Err(Error::NotComparable(format!("{x} is not below {y}")));
    }
    let (xs, ys) = (x.elements(), y.elements());
    let images = (1..=degree)
        .map(|i| xs.iter().position(|&xj| i <= xj).map_or(degree, |j| ys[j]))
        .collect();
    Transformation::new(images)
}

/// Recovers `(X, Y)` from `f ∈ ℂT_d`: `Y = im f \ {d}` and `X` holds, for
/// each `y ∈ Y`, the largest point sent to `y`.
pub fn pair_from_f(f: &Transformation) -> Result<(Subset, Subset)> {
    if !is_catalan_map(f.images()) {
        return Err(Error::InvalidTransformation(format!(
            "{f} is not order-preserving and order-increasing"
        )));
    }
    let d = f.degree();
    let y = image_without_top(f);
    let xs: Vec<usize> = y
        .elements()
        .into_iter()
        .map(|v| (1..=d).rev().find(|&i| f.apply(i) == v).expect("v is in the image"))
        .collect();
    Ok((Subset::from_elements(&xs), y))
}

/// `f` is a partial cross section of `Z`: `d ∉ f(Z)` and `f|_Z` is injective.
pub fn is_pcs(f: &Transformation, z: Subset) -> bool {
    let d = f.degree();
    let images: Vec<usize> = z.elements().into_iter().map(|i| f.apply(i)).collect();
    let mut distinct = images.clone();
    distinct.sort_unstable();
    distinct.dedup();
    !images.contains(&d) && distinct.len() == images.len()
}

/// `g` is a multi cross section of `Z`: every `z ∈ Z` is `e_Z(g(x))` for
/// some `x`.
pub fn is_mcs(g: &Transformation, z: Subset) -> Result<bool> {
    let e = e_z(z, g.degree())?;
    let hit: Vec<usize> = (1..=g.degree()).map(|x| e.apply(g.apply(x))).collect();
    Ok(z.elements().iter().all(|v| hit.contains(v)))
}

/// A failed claim about one element (or a pair of elements) of `ℂT_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanWitness {
    pub element: usize,
    pub other: Option<usize>,
    pub claim: String,
}

impl fmt::Display for CatalanWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.other {
            Some(o) => write!(f, "{} at ({}, {})", self.claim, self.element, o),
            None => write!(f, "{} at {}", self.claim, self.element),
        }
    }
}

fn witness(element: usize, other: Option<usize>, claim: &str) -> Verdict<CatalanWitness> {
    Verdict::Fails(CatalanWitness {
        element,
        other,
        claim: claim.into(),
    })
}

/// Checks `f_{X,Y}* = e_X` and `f_{X,Y}⁺ = e_Y` for every element, and that
/// `L̃` is equality of kernels and `R̃` equality of images.
pub fn star_plus_check(m: &CatalanMonoid, f: &EFountainStructure) -> Result<Verdict<CatalanWitness>> {
    for a in 0..m.size() {
        let (x, y) = m.pair(a);
        if f.star(a) != m.idempotent_index(x)? {
            return Ok(witness(a, None, "star is not e_X"));
        }
        if f.plus(a) != m.idempotent_index(y)? {
            return Ok(witness(a, None, "plus is not e_Y"));
        }
    }
    let (lt, rt) = f.tilde_relations();
    for a in 0..m.size() {
        for b in 0..m.size() {
            let (fa, fb) = (m.element(a), m.element(b));
            if lt.contains(a, b) != fa.same_kernel(fb) {
                return Ok(witness(a, Some(b), "L~ differs from equal kernels"));
            }
            if rt.contains(a, b) != (fa.image_set() == fb.image_set()) {
                return Ok(witness(a, Some(b), "R~ differs from equal images"));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// First `(f, Z)` where `is_pcs(f, Z)` disagrees with `(f e_Z)* = e_Z`.
pub fn pcs_equivalence(m: &CatalanMonoid, f: &EFountainStructure) -> Result<Verdict<(usize, Subset)>> {
    for a in 0..m.size() {
        for z in Subset::all(m.degree() - 1) {
            let e = m.idempotent_index(z)?;
            if is_pcs(m.element(a), z) != (f.star(f.mul(a, e)) == e) {
                return Ok(Verdict::Fails((a, z)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// First `(g, Z)` where `is_mcs(g, Z)` disagrees with `(e_Z g)⁺ = e_Z`.
pub fn mcs_equivalence(m: &CatalanMonoid, f: &EFountainStructure) -> Result<Verdict<(usize, Subset)>> {
    for g in 0..m.size() {
        for z in Subset::all(m.degree() - 1) {
            let e = m.idempotent_index(z)?;
            if is_mcs(m.element(g), z)? != (f.plus(f.mul(e, g)) == e) {
                return Ok(Verdict::Fails((g, z)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `⪯_n` on the subsets of `[n]`, indexed by bitmask.
pub struct SubsetPoset {
    n: usize,
    relation: BinaryRelation,
}

impl SubsetPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: Subset, y: Subset) -> bool {
        self.relation.contains(x.0 as usize, y.0 as usize)
    }

    pub fn relation(&self) -> &BinaryRelation {
        &self.relation
    }

    pub fn comparable_pairs(&self) -> usize {
        self.relation.len()
    }
}

/// Builds `⪯_n`; it has exactly `C_{n+1}` comparable pairs.
pub fn build_preceq(n: usize) -> SubsetPoset {
    let size = 1usize << n;
    let relation = BinaryRelation::from_fn(size, |x, y| preceq(Subset(x as u32), Subset(y as u32)));
    assert_eq!(relation.len() as u64, catalan_number(n + 1));
    SubsetPoset { n, relation }
}

/// Checks that `C(ℂT_d)` is `⪯_{d−1}` viewed as a category: each hom-set
/// `e_X → e_Y` has one morphism when `X ⪯ Y` and none otherwise.
pub fn category_matches_preceq(m: &CatalanMonoid, c: &FiniteCategory) -> Result<Verdict<(Subset, Subset)>> {
    let poset = build_preceq(m.degree() - 1);
    for x in Subset::all(m.degree() - 1) {
        for y in Subset::all(m.degree() - 1) {
            let hom = c.hom_set(m.idempotent_index(x)?, m.idempotent_index(y)?);
            let expected = usize::from(poset.leq(x, y));
            if hom.len() != expected || hom.iter().any(|&a| m.pair(a) != (x, y)) {
                return Ok(Verdict::Fails((x, y)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// One named step of [`verify_catalan_isomorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageResult {
    pub stage: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanVerification {
    pub degree: usize,
    pub ring: String,
    /// Stages in execution order; a stage that errors ends the run.
    pub stages: Vec<StageResult>,
}

impl CatalanVerification {
    pub fn passed(&self) -> bool {
        self.stages.len() == CATALAN_STAGES.len() && self.stages.iter().all(|s| s.passed)
    }

    pub fn stage(&self, name: &str) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.stage == name)
    }
}

pub const CATALAN_STAGES: [&str; 17] = [
    "catalan.size",
    "catalan.idempotents",
    "catalan.pairMap",
    "fountain.reducedEFountain",
    "catalan.jTrivial",
    "fountain.congruence",
    "catalan.starPlus",
    "catalan.pcs",
    "catalan.mcs",
    "ample.generalizedRight",
    "ample.generalizedLeft",
    "ample.right",
    "orders.triLeftInRightOrder",
    "category.build",
    "category.matchesPreceq",
    "algebra.homomorphism",
    "algebra.isomorphism",
];

struct Stages {
    stages: Vec<StageResult>,
}

impl Stages {
    fn record(&mut self, stage: &'static str, passed: bool, detail: impl Into<String>) {
        self.stages.push(StageResult {
            stage,
            passed,
            detail: detail.into(),
        });
    }

    fn verdict<W: fmt::Display>(&mut self, stage: &'static str, v: &Verdict<W>) {
        match v.witness() {
            None => self.record(stage, true, ""),
            Some(w) => self.record(stage, false, w.to_string()),
        }
    }

    /// Records an error as a failed stage.
    fn run<T>(&mut self, stage: &'static str, r: Result<T>) -> Option<T> {
        match r {
            Ok(t) => Some(t),
            Err(e) => {
                self.record(stage, false, e.to_string());
                None
            }
        }
    }
}

/// End-to-end check on `ℂT_d`: enumeration, fountain structure with
/// `E = E(S)`, the star/plus description, the ample identities (standard
/// right ample must fail exactly when `d ≥ 3`), the category against `⪯`,
/// and the algebra isomorphism using `≤_R`.
pub fn verify_catalan_isomorphism<R: Ring>(degree: usize, ring: &R) -> Result<CatalanVerification> {
    let m = generate_catalan(degree)?;
    let mut st = Stages { stages: Vec::new() };
    run_stages(&m, ring, &mut st);
    Ok(CatalanVerification {
        degree,
        ring: ring.name(),
        stages: st.stages,
    })
}

fn run_stages<R: Ring>(m: &CatalanMonoid, ring: &R, st: &mut Stages) -> Option<()> {
    let d = m.degree();
    let n = d - 1;
    let expected = catalan_number(d);
    st.record(
        "catalan.size",
        m.size() as u64 == expected,
        format!("{} elements, expected {expected}", m.size()),
    );

    let s = m.semigroup();
    let idempotents = s.idempotents();
    let mut from_subsets: Vec<usize> = Subset::all(n).map(|z| m.idempotent_index(z)).collect::<Result<_>>().ok()?;
    from_subsets.sort_unstable();
    st.record(
        "catalan.idempotents",
        idempotents == from_subsets && idempotents.len() == 1 << n,
        format!("{} idempotents", idempotents.len()),
    );

    let pair_ok = (0..m.size()).find(|&a| {
        let (x, y) = m.pair(a);
        f_from_pair(x, y, d).ok().as_ref() != Some(m.element(a))
    });
    let mut seen = m.pairs().to_vec();
    seen.sort_unstable();
    seen.dedup();
    let poset = build_preceq(n);
    let bijective = pair_ok.is_none() && seen.len() == m.size() && poset.comparable_pairs() == m.size();
    st.record(
        "catalan.pairMap",
        bijective,
        pair_ok.map_or(String::new(), |a| format!("round trip fails at {a}")),
    );

    let f = st.run("fountain.reducedEFountain", analyze_with_all_idempotents(s))?;
    st.record("fountain.reducedEFountain", true, "");
    st.record("catalan.jTrivial", s.is_j_trivial(), "");
    let congruence = st.run("fountain.congruence", f.check_congruence_condition())?;
    st.verdict("fountain.congruence", &congruence);
    if !congruence.holds() {
        return None;
    }
    let v = st.run("catalan.starPlus", star_plus_check(m, &f))?;
    st.verdict("catalan.starPlus", &v);
    let v = st.run("catalan.pcs", pcs_equivalence(m, &f))?;
    st.verdict("catalan.pcs", &v.map(|(a, z)| format!("f={a}, Z={z}")));
    let v = st.run("catalan.mcs", mcs_equivalence(m, &f))?;
    st.verdict("catalan.mcs", &v.map(|(a, z)| format!("g={a}, Z={z}")));

    let report = st.run("ample.generalizedRight", f.ample_report())?;
    st.verdict(
        "ample.generalizedRight",
        &report.generalized_right_ample.clone().map(|w| format!("a={}, e={}, f={}", w.a, w.e, w.f)),
    );
    st.verdict(
        "ample.generalizedLeft",
        &report.generalized_left_ample.clone().map(|w| format!("a={}, e={}, f={}", w.a, w.e, w.f)),
    );
    let right_expected = d <= 2;
    let detail = match report.right_ample.witness() {
        Some(w) => format!(
            "fails as expected: a={}, e={}, ea={} but a(ea)*={}",
            f.label(w.a),
            f.label(w.e),
            f.label(f.mul(w.e, w.a)),
            f.label(f.mul(w.a, f.star(f.mul(w.e, w.a))))
        ),
        None => "holds".into(),
    };
    st.record("ample.right", report.right_ample.holds() == right_expected, detail);

    let tri = st.run("orders.triLeftInRightOrder", orders::tri_left(&f))?;
    let right_order = s.green_preorder(GreenSide::R);
    st.record(
        "orders.triLeftInRightOrder",
        tri.is_subset_of(&right_order),
        tri.first_not_in(&right_order).map_or(String::new(), |p| format!("{p:?}")),
    );

    let c = st.run("category.build", build_category(&f))?;
    st.record(
        "category.build",
        true,
        format!("{} objects, {} morphisms", c.objects().len(), c.morphism_count()),
    );
    let v = st.run("category.matchesPreceq", category_matches_preceq(m, &c))?;
    st.verdict("category.matchesPreceq", &v.map(|(x, y)| format!("X={x}, Y={y}")));

    let h = st.run("algebra.homomorphism", algebra::verify_homomorphism(&f, &c, ring))?;
    st.verdict("algebra.homomorphism", &h.map(|(b, a)| format!("b={b}, a={a}")));
    let order_source = st.run("algebra.isomorphism", orders::embedding_order(&f))?;
    let poset = st.run("algebra.isomorphism", Poset::new(right_order))?;
    let iso = st.run(
        "algebra.isomorphism",
        algebra::verify_isomorphism_with_order(&f, &c, Arc::new(poset), ring),
    )?;
    let via_r = matches!(
        order_source,
        orders::EmbeddingOrder::Found {
            source: EmbeddingSource::GreenR,
            ..
        }
    );
    st.record(
        "algebra.isomorphism",
        iso.is_isomorphism && via_r,
        iso.reason.unwrap_or_default(),
    );
    Some(())
}
