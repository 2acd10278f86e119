//! Reference structures with known properties, and an exhaustive stream of
//! small semigroups paired with every admissible `E`.

use std::collections::BTreeMap;
use std::fmt;

use crate::catalan::generate_catalan;
use crate::fountain::analyze_reduced_e_fountain;
use crate::semigroup::FiniteSemigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    ReducedEFountain,
    Congruence,
    RightAmple,
    LeftAmple,
    GeneralizedRightAmple,
    GeneralizedLeftAmple,
    TriLeftSymmetric,
    PhiInjective,
    EEhresmann,
    Isomorphism,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::ReducedEFountain => "reducedEFountain",
            Property::Congruence => "congruence",
            Property::RightAmple => "rightAmple",
            Property::LeftAmple => "leftAmple",
            Property::GeneralizedRightAmple => "generalizedRightAmple",
            Property::GeneralizedLeftAmple => "generalizedLeftAmple",
            Property::TriLeftSymmetric => "triLeftSymmetric",
            Property::PhiInjective => "phiInjective",
            Property::EEhresmann => "eEhresmann",
            Property::Isomorphism => "isomorphism",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub semigroup: FiniteSemigroup,
    pub e_set: Vec<usize>,
    pub expected: BTreeMap<Property, bool>,
}

fn entry(name: impl Into<String>, semigroup: FiniteSemigroup, e_set: Vec<usize>, expected: &[(Property, bool)]) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        semigroup,
        e_set,
        expected: expected.iter().copied().collect(),
    }
}

/// The `n × n` rectangular band `(i₁,j₁)(i₂,j₂) = (i₁,j₂)` with the diagonal
/// as `E`. Element `(i, j)` has index `(i−1)n + (j−1)`.
pub fn rectangular_band(n: usize) -> CorpusEntry {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n * n)
        .map(|a| (0..n * n).map(|b| (a / n) * n + b % n).collect())
        .collect();
    let labels = (0..n * n).map(|a| format!("({},{})", a / n + 1, a % n + 1)).collect();
    let semigroup = FiniteSemigroup::from_trusted_parts(n * n, table.concat(), Some(labels));
    let e_set = (0..n).map(|i| i * n + i).collect();
    use Property::*;
    let nontrivial = n >= 2;
    entry(
        format!("rectangular-band-{n}"),
        semigroup,
        e_set,
        &[
            (ReducedEFountain, true),
            (Congruence, true),
            (GeneralizedRightAmple, true),
            (GeneralizedLeftAmple, true),
            (RightAmple, !nontrivial),
            (TriLeftSymmetric, true),
            (PhiInjective, !nontrivial),
        ],
    )
}

/// The symmetric inverse monoid `I_n` of partial injections on `[n]`, with
/// the partial identities as `E`. Requires `n ≤ 4`.
pub fn symmetric_inverse_monoid(n: usize) -> CorpusEntry {
    assert!(n <= 4, "symmetric inverse monoid is limited to n ≤ 4");
    // partial maps as Vec<Option<usize>>, 0-based, enumerated lexicographically
    let mut maps: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for _ in 0..n {
        maps = maps
            .into_iter()
            .flat_map(|m| {
                let mut out = vec![{
                    let mut m = m.clone();
                    m.push(None);
                    m
                }];
                for v in 0..n {
                    if !m.contains(&Some(v)) {
                        let mut m = m.clone();
                        m.push(Some(v));
                        out.push(m);
                    }
                }
                out
            })
            .collect();
    }
    let index: std::collections::HashMap<&Vec<Option<usize>>, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let size = maps.len();
    let mut table = Vec::with_capacity(size * size);
    for f in &maps {
        for g in &maps {
            let fg: Vec<Option<usize>> = g.iter().map(|x| x.and_then(|y| f[y])).collect();
            table.push(index[&fg]);
        }
    }
    let labels = maps
        .iter()
        .map(|m| {
            let parts: Vec<String> = m.iter().map(|x| x.map_or("-".into(), |v| (v + 1).to_string())).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let e_set = maps
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().enumerate().all(|(i, x)| x.is_none_or(|v| v == i)))
        .map(|(k, _)| k)
        .collect();
    use Property::*;
    entry(
        format!("symmetric-inverse-{n}"),
        FiniteSemigroup::from_trusted_parts(size, table, Some(labels)),
        e_set,
        &[(ReducedEFountain, true), (Congruence, true), (EEhresmann, true), (Isomorphism, true)],
    )
}

fn from_table(rows: &[&[usize]]) -> FiniteSemigroup {
    let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    FiniteSemigroup::from_cayley_table(&rows, None).expect("reference table is associative")
}

/// The fixed reference set: rectangular bands, symmetric inverse monoids,
/// small Catalan monoids, and a few trivial or degenerate tables.
pub fn reference_entries() -> Vec<CorpusEntry> {
    use Property::*;
    let mut out = vec![
        rectangular_band(1),
        rectangular_band(2),
        rectangular_band(3),
        symmetric_inverse_monoid(1),
        symmetric_inverse_monoid(2),
        symmetric_inverse_monoid(3),
        entry("cyclic-group-2", from_table(&[&[0, 1], &[1, 0]]), vec![0], &[(ReducedEFountain, true)]),
        entry(
            "left-zero-2",
            from_table(&[&[0, 0], &[1, 1]]),
            vec![0, 1],
            &[(ReducedEFountain, false)],
        ),
        entry(
            "chain-3",
            from_table(&[&[0, 0, 0], &[0, 1, 1], &[0, 1, 2]]),
            vec![0, 1, 2],
            &[(ReducedEFountain, true), (EEhresmann, true), (RightAmple, true)],
        ),
    ];
    for d in [3, 4] {
        let m = generate_catalan(d).expect("small degree");
        let s = m.semigroup().clone();
        let e = s.idempotents();
        out.push(entry(
            format!("catalan-{d}"),
            s,
            e,
            &[
                (ReducedEFountain, true),
                (Congruence, true),
                (RightAmple, false),
                (GeneralizedRightAmple, true),
                (GeneralizedLeftAmple, true),
                (Isomorphism, true),
            ],
        ));
    }
    out
}

/// Every associative table on `order` elements, found by row-major
/// backtracking that rejects a partial table as soon as some fully
/// determined triple is non-associative. No isomorphism reduction.
pub fn associative_tables(order: usize) -> Vec<FiniteSemigroup> {
    let n = order;
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    let mut out = Vec::new();

    fn consistent(table: &[Option<usize>], n: usize) -> bool {
        let t = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = t(a, b) else { continue };
                for c in 0..n {
                    let (Some(left), Some(bc)) = (t(ab, c), t(b, c)) else { continue };
                    if let Some(right) = t(a, bc) {
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(cell: usize, table: &mut Vec<Option<usize>>, n: usize, out: &mut Vec<FiniteSemigroup>) {
        if cell == n * n {
            let flat = table.iter().map(|v| v.expect("complete")).collect();
            out.push(FiniteSemigroup::from_trusted_parts(n, flat, None));
            return;
        }
        for v in 0..n {
            table[cell] = Some(v);
            if consistent(table, n) {
                fill(cell + 1, table, n, out);
            }
        }
        table[cell] = None;
    }

    if n > 0 {
        fill(0, &mut table, n, &mut out);
    }
    out
}

/// Lazily yields, for every associative table of order `1..=max_order` and
/// every subset `E` of its idempotents, the pairs that are reduced
/// E-Fountain with the congruence condition.
pub fn enumerate_structures(max_order: usize) -> impl Iterator<Item = CorpusEntry> {
    assert!(max_order <= 4, "enumeration is limited to order 4");
    (1..=max_order).flat_map(|order| {
        associative_tables(order).into_iter().enumerate().flat_map(move |(k, s)| {
            let idempotents = s.idempotents();
            let subsets = 1u32 << idempotents.len();
            (1..subsets).filter_map(move |mask| {
                let e_set: Vec<usize> = idempotents
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let f = analyze_reduced_e_fountain(&s, &e_set).ok()?;
                f.satisfies_congruence_condition().then(|| {
                    let e_text: Vec<String> = e_set.iter().map(usize::to_string).collect();
                    entry(
                        format!("order{order}#{k} E={{{}}}", e_text.join(",")),
                        s.clone(),
                        e_set,
                        &[],
                    )
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fountain::EFountainStructure;
    use crate::orders;
    use crate::semigroup::GreenSide;

    /// Brute-force count of associative binary operations, without pruning.
    fn brute_force_count(n: usize) -> usize {
        let cells = n * n;
        let mut count = 0;
        for code in 0..n.pow(cells as u32) {
            let mut c = code;
            let t: Vec<usize> = (0..cells)
                .map(|_| {
                    let v = c % n;
                    c /= n;
                    v
                })
                .collect();
            let ok = (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|d| t[t[a * n + b] * n + d] == t[a * n + t[b * n + d]]))
            });
            count += ok as usize;
        }
        count
    }

    #[test]
    fn backtracking_agrees_with_brute_force() {
        for n in 1..=3 {
            assert_eq!(associative_tables(n).len(), brute_force_count(n));
        }
        assert_eq!(associative_tables(3).len(), 113);
    }

    #[test]
    fn rectangular_band_structure() {
        let e = rectangular_band(2);
        assert_eq!(e.semigroup.size(), 4);
        assert_eq!(e.e_set, vec![0, 3]);
        assert_eq!(e.semigroup.label(1), "(1,2)");
        let r = e.semigroup.green_equiv(GreenSide::R);
        assert!(r.contains(0, 1));
        assert!(!e.semigroup.is_r_trivial());
    }

    #[test]
    fn rectangular_band_3_has_row_classes() {
        let e = rectangular_band(3);
        let f = analyze_reduced_e_fountain(&e.semigroup, &e.e_set).unwrap();
        let tri = orders::tri_left(&f).unwrap();
        for a in 0..9 {
            let class: Vec<usize> = tri.above(a).collect();
            let row = a / 3;
            assert_eq!(class, vec![row * 3, row * 3 + 1, row * 3 + 2]);
        }
    }

    #[test]
    fn symmetric_inverse_sizes() {
        for (n, size) in [(0, 1), (1, 2), (2, 7), (3, 34), (4, 209)] {
            let e = symmetric_inverse_monoid(n);
            assert_eq!(e.semigroup.size(), size);
            assert_eq!(e.e_set.len(), 1 << n);
            assert!(e.semigroup.first_non_associative_triple().is_none());
        }
    }

    #[test]
    fn symmetric_inverse_2_tri_left_equals_leq_l() {
        let e = symmetric_inverse_monoid(2);
        let f = analyze_reduced_e_fountain(&e.semigroup, &e.e_set).unwrap();
        assert_eq!(orders::tri_left(&f).unwrap(), orders::leq_l(&f).unwrap());
    }

    #[test]
    fn order_one_and_two_streams() {
        let one: Vec<_> = enumerate_structures(1).collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].e_set, vec![0]);
        let two: Vec<_> = enumerate_structures(2).collect();
        // left zero: 0·1 = 0 but 1·0 = 1, so E = {0, 1} is not reduced, and a
        // single idempotent leaves the other element without a left identity
        let left_zero = |s: &FiniteSemigroup| s.size() == 2 && (0..2).all(|a| (0..2).all(|b| s.mul(a, b) == a));
        assert!(!two.iter().any(|e| left_zero(&e.semigroup)));
        assert!(two.iter().all(|e| analyze_reduced_e_fountain(&e.semigroup, &e.e_set).is_ok()));
        // the two-element semilattice does appear with both idempotents
        assert!(two.iter().any(|e| e.semigroup.size() == 2 && e.e_set == vec![0, 1]));
    }

    #[test]
    fn order_three_stream_is_nonempty_and_valid() {
        let entries: Vec<_> = enumerate_structures(3).collect();
        assert!(entries.iter().any(|e| e.semigroup.size() == 3));
        for e in &entries {
            let f: EFountainStructure = analyze_reduced_e_fountain(&e.semigroup, &e.e_set).unwrap();
            assert!(f.satisfies_congruence_condition());
        }
    }
}
