//! The category attached to a reduced E-Fountain semigroup with the
//! congruence condition: objects are the elements of `E`, there is one
//! morphism `C(a)` per element `a` with domain `a*` and codomain `a⁺`, and
//! `C(b)·C(a) = C(ba)` whenever `b* = a⁺`.
//!
//! Morphism indices are semigroup indices and object indices are the
//! semigroup indices of the elements of `E`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fountain::EFountainStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<usize>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    /// `comp[m2 * n + m1]` is `m2·m1` when `dom(m2) = cod(m1)`.
    comp: Vec<Option<usize>>,
}

impl FiniteCategory {
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, m: usize) -> usize {
        self.dom[m]
    }

    pub fn cod(&self, m: usize) -> usize {
        self.cod[m]
    }

    /// `after · before`, if composable.
    #[inline]
    pub fn compose(&self, after: usize, before: usize) -> Option<usize> {
        self.comp[after * self.morphism_count() + before]
    }

    /// Morphisms `x → y`.
    pub fn hom_set(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&m| self.dom[m] == x && self.cod[m] == y)
            .collect()
    }

    /// The identity at an object is `C(e)` itself.
    pub fn identity_at(&self, object: usize) -> usize {
        object
    }

    /// Text dump: `objects: …` then one `m: dom -> cod` line per morphism.
    pub fn dump(&self) -> String {
        let mut out = String::from("objects:");
        for o in &self.objects {
            let _ = write!(out, " {o}");
        }
        out.push('\n');
        for m in 0..self.morphism_count() {
            let _ = writeln!(out, "{m}: {} -> {}", self.dom[m], self.cod[m]);
        }
        out
    }

    /// Exhaustive check of the category axioms; returns a description of the
    /// first violation.
    pub fn first_axiom_failure(&self) -> Option<String> {
        let n = self.morphism_count();
        for m2 in 0..n {
            for m1 in 0..n {
                let composable = self.dom[m2] == self.cod[m1];
                match self.compose(m2, m1) {
                    Some(_) if !composable => {
                        return Some(format!("{m2}·{m1} defined but dom/cod do not match"))
                    }
                    None if composable => return Some(format!("{m2}·{m1} undefined but composable")),
                    Some(c) if self.dom[c] != self.dom[m1] || self.cod[c] != self.cod[m2] => {
                        return Some(format!("{m2}·{m1} = {c} has wrong domain or codomain"))
                    }
                    _ => {}
                }
            }
        }
        for &e in &self.objects {
            if self.dom[e] != e || self.cod[e] != e {
                return Some(format!("C({e}) is not an endomorphism of {e}"));
            }
            for m in 0..n {
                if self.cod[m] == e && self.compose(e, m) != Some(m) {
                    return Some(format!("identity at {e} is not a left unit for {m}"));
                }
                if self.dom[m] == e && self.compose(m, e) != Some(m) {
                    return Some(format!("identity at {e} is not a right unit for {m}"));
                }
            }
        }
        for m1 in 0..n {
            for m2 in 0..n {
                let Some(m21) = self.compose(m2, m1) else { continue };
                for m3 in 0..n {
                    let Some(m32) = self.compose(m3, m2) else { continue };
                    if self.compose(m3, m21) != self.compose(m32, m1) {
                        return Some(format!("composition not associative at ({m3}, {m2}, {m1})"));
                    }
                }
            }
        }
        None
    }
}

/// Builds the category of a reduced E-Fountain structure satisfying the
/// congruence condition, and verifies the category axioms.
pub fn build_category(f: &EFountainStructure) -> Result<FiniteCategory> {
    f.require_congruence()?;
    let n = f.size();
    let dom: Vec<usize> = (0..n).map(|a| f.star(a)).collect();
    let cod: Vec<usize> = (0..n).map(|a| f.plus(a)).collect();
    let mut comp = vec![None; n * n];
    for b in 0..n {
        for a in 0..n {
            if dom[b] == cod[a] {
                let ba = f.mul(b, a);
                if f.plus(ba) != cod[b] || f.star(ba) != dom[a] {
                    return Err(Error::AxiomFailure(format!(
                        "C({b})·C({a}) = C({ba}) but (ba)+ = b+ or (ba)* = a* fails"
                    )));
                }
                comp[b * n + a] = Some(ba);
            }
        }
    }
    let category = FiniteCategory {
        objects: f.e_set().to_vec(),
        dom,
        cod,
        comp,
    };
    if let Some(failure) = category.first_axiom_failure() {
        return Err(Error::AxiomFailure(failure));
    }
    Ok(category)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::generate_catalan;
    use crate::corpus;
    use crate::fountain::{analyze_reduced_e_fountain, analyze_with_all_idempotents};
    use crate::semigroup::FiniteSemigroup;

    #[test]
    fn catalan3_category_is_the_subset_poset() {
        let m = generate_catalan(3).unwrap();
        let f = analyze_with_all_idempotents(m.semigroup()).unwrap();
        let c = build_category(&f).unwrap();
        assert_eq!(c.objects().len(), 4);
        assert_eq!(c.morphism_count(), 5);
        let mut non_identity = 0;
        for &x in c.objects() {
            for &y in c.objects() {
                let hom = c.hom_set(x, y);
                assert!(hom.len() <= 1);
                if x != y {
                    non_identity += hom.len();
                }
            }
        }
        // {1} ⪯ {2} is the only strict relation in ⪯₂
        assert_eq!(non_identity, 1);
    }

    #[test]
    fn rectangular_band_hom_sets_are_singletons() {
        let entry = corpus::rectangular_band(2);
        let f = analyze_reduced_e_fountain(&entry.semigroup, &entry.e_set).unwrap();
        let c = build_category(&f).unwrap();
        assert_eq!(c.objects().len(), 2);
        assert_eq!(c.morphism_count(), 4);
        for &x in c.objects() {
            for &y in c.objects() {
                assert_eq!(c.hom_set(x, y).len(), 1);
            }
        }
    }

    #[test]
    fn single_idempotent_gives_one_morphism() {
        let one = FiniteSemigroup::from_cayley_table(&[vec![0]], None).unwrap();
        let f = analyze_with_all_idempotents(&one).unwrap();
        let c = build_category(&f).unwrap();
        assert_eq!(c.dump(), "objects: 0\n0: 0 -> 0\n");
    }

    #[test]
    fn composition_defined_exactly_when_dom_matches_cod() {
        let entry = corpus::symmetric_inverse_monoid(2);
        let f = analyze_reduced_e_fountain(&entry.semigroup, &entry.e_set).unwrap();
        let c = build_category(&f).unwrap();
        let n = c.morphism_count();
        for m2 in 0..n {
            for m1 in 0..n {
                assert_eq!(c.compose(m2, m1).is_some(), c.dom(m2) == c.cod(m1));
            }
        }
        assert!(c.first_axiom_failure().is_none());
    }
}
