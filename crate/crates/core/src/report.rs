//! Plain-text PASS/FAIL reports with a stable line schema
//! `checkName: STATUS [witness]`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{self, ChangeOfBasis, Poset};
use crate::catalan::{self, CATALAN_STAGES};
use crate::category::build_category;
use crate::corpus::{self, CorpusEntry};
use crate::error::{Error, Result};
use crate::fountain::{analyze_reduced_e_fountain, EFountainStructure};
use crate::orders::{self, EmbeddingOrder};
use crate::ring::{Integers, IntegersMod, Rationals, Ring, RingSpec};
use crate::semigroup::FiniteSemigroup;
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub check: String,
    pub status: Status,
    pub witness: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.status)?;
        if !self.witness.is_empty() {
            write!(f, " {}", self.witness)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            lines: Vec::new(),
        }
    }

    pub fn push(&mut self, check: impl Into<String>, status: Status, witness: impl Into<String>) {
        self.lines.push(ReportLine {
            check: check.into(),
            status,
            witness: witness.into(),
        });
    }

    fn holds(&mut self, check: &str, holds: bool, witness: impl Into<String>) {
        let status = if holds { Status::Pass } else { Status::Fail };
        self.push(check, status, witness);
    }

    fn verdict<W>(&mut self, check: &str, v: &Verdict<W>, describe: impl FnOnce(&W) -> String) {
        match v.witness() {
            None => self.push(check, Status::Pass, ""),
            Some(w) => self.push(check, Status::Fail, describe(w)),
        }
    }

    fn skip_all(&mut self, checks: &[&str], reason: &str) {
        for c in checks {
            self.push(*c, Status::Skipped, reason);
        }
    }

    pub fn line(&self, check: &str) -> Option<&ReportLine> {
        self.lines.iter().find(|l| l.check == check)
    }

    pub fn status(&self, check: &str) -> Option<Status> {
        self.line(check).map(|l| l.status)
    }

    pub fn has_failures(&self) -> bool {
        self.lines.iter().any(|l| l.status == Status::Fail)
    }

    /// 0 when no line failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn render(&self) -> String {
        let mut out = format!("structure: {}\n", self.name);
        for l in &self.lines {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Check names of [`analyze_report`], in output order.
pub const ANALYZE_CHECKS: [&str; 22] = [
    "reducedEFountain",
    "congruence",
    "eEhresmann",
    "rightAmple",
    "leftAmple",
    "generalizedRightAmple",
    "generalizedLeftAmple",
    "triLeftPartialOrder",
    "triLeftSymmetric",
    "embeddingOrder",
    "category",
    "phiHomomorphism",
    "phiInjective",
    "isomorphism",
    "thm.ampleImplications",
    "thm.subbandIsSemilattice",
    "thm.ehresmannEquivalence",
    "thm.triLeftDefinitionsAgree",
    "thm.leqLContained",
    "thm.homomorphismIffGeneralizedRightAmple",
    "thm.mobiusInverse",
    "thm.psiInvertsPhi",
];

fn from(check: &str) -> &'static [&'static str] {
    let i = ANALYZE_CHECKS.iter().position(|c| *c == check).expect("known check");
    &ANALYZE_CHECKS[i..]
}

fn without<'a>(checks: &'a [&'a str], drop: &[&str]) -> Vec<&'a str> {
    checks.iter().copied().filter(|c| !drop.contains(c)).collect()
}

/// Runs the whole pipeline on `S` (with `E = E(S)` when `e_set` is `None`)
/// and reports every property and theorem self-check.
pub fn analyze_report(name: &str, s: &FiniteSemigroup, e_set: Option<&[usize]>, ring: RingSpec) -> Report {
    match ring {
        RingSpec::Int => analyze_with_ring(name, s, e_set, &Integers),
        RingSpec::Rational => analyze_with_ring(name, s, e_set, &Rationals),
        RingSpec::Mod(m) => analyze_with_ring(name, s, e_set, &IntegersMod::new(m).expect("validated modulus")),
    }
}

fn analyze_with_ring<R: Ring>(name: &str, s: &FiniteSemigroup, e_set: Option<&[usize]>, ring: &R) -> Report {
    let mut report = Report::new(name);
    let all = s.idempotents();
    let e_set = e_set.unwrap_or(&all);
    let f = match analyze_reduced_e_fountain(s, e_set) {
        Ok(f) => f,
        Err(e) => {
            report.push("reducedEFountain", Status::Fail, e.to_string());
            report.skip_all(&ANALYZE_CHECKS[1..], "not reduced E-Fountain");
            return report;
        }
    };
    report.push("reducedEFountain", Status::Pass, format!("|S|={} |E|={}", f.size(), f.e_set().len()));
    if let Err(e) = fill_analysis(&mut report, &f, ring) {
        let done: Vec<String> = report.lines.iter().map(|l| l.check.clone()).collect();
        let remaining: Vec<&str> = ANALYZE_CHECKS.iter().copied().filter(|c| !done.iter().any(|d| d == c)).collect();
        if let Some((first, rest)) = remaining.split_first() {
            report.push(*first, Status::Fail, e.to_string());
            report.skip_all(rest, "earlier check errored");
        }
    }
    report
}

fn fill_analysis<R: Ring>(report: &mut Report, f: &EFountainStructure, ring: &R) -> Result<()> {
    let label = |a: usize| f.label(a);
    let congruence = f.check_congruence_condition()?;
    report.verdict("congruence", &congruence, |w| w.to_string());
    report.holds("eEhresmann", f.is_e_ehresmann(), "");
    if !congruence.holds() {
        let rest = without(from("rightAmple"), &["triLeftPartialOrder", "triLeftSymmetric", "thm.triLeftDefinitionsAgree", "thm.leqLContained"]);
        report.skip_all(&rest, "congruence condition fails");
        order_lines(report, f)?;
        return Ok(());
    }
    let amples = f.ample_report()?;
    let ample = |w: &crate::fountain::AmpleWitness| format!("a={} e={}", label(w.a), label(w.e));
    let generalized =
        |w: &crate::fountain::GeneralizedAmpleWitness| format!("a={} e={} f={}", label(w.a), label(w.e), label(w.f));
    report.verdict("rightAmple", &amples.right_ample, ample);
    report.verdict("leftAmple", &amples.left_ample, ample);
    report.verdict("generalizedRightAmple", &amples.generalized_right_ample, generalized);
    report.verdict("generalizedLeftAmple", &amples.generalized_left_ample, generalized);

    let tri = orders::tri_left(f)?;
    let d = orders::diagnose(&tri);
    let order_witness = match (d.antisymmetric_witness, d.transitive_witness) {
        (Some((a, b)), _) => format!("{} and {} restrict to each other", label(a), label(b)),
        (None, Some((a, b, c))) => format!("{} <| {} <| {} but not {} <| {}", label(a), label(b), label(c), label(a), label(c)),
        (None, None) => String::new(),
    };
    report.holds("triLeftPartialOrder", d.is_partial_order, order_witness);
    report.holds("triLeftSymmetric", tri.is_symmetric(), "");
    let embedding = orders::embedding_order(f)?;
    match &embedding {
        EmbeddingOrder::Found { source, .. } => report.push("embeddingOrder", Status::Pass, format!("{source:?}")),
        EmbeddingOrder::NoEmbedding { cycle } => {
            let names: Vec<String> = cycle.iter().map(|&a| label(a)).collect();
            report.push("embeddingOrder", Status::Fail, format!("cycle {}", names.join(" <| ")));
        }
    }

    let c = build_category(f)?;
    report.push(
        "category",
        Status::Pass,
        format!("{} objects, {} morphisms", c.objects().len(), c.morphism_count()),
    );
    let change = ChangeOfBasis::new(f, &c)?;
    let homomorphism = Verdict::from_witness(change.first_non_multiplicative_pair(ring)?);
    report.verdict("phiHomomorphism", &homomorphism, |&(b, a)| format!("b={} a={}", label(b), label(a)));
    report.holds("phiInjective", change.is_injective(), "");
    let iso = match &embedding {
        EmbeddingOrder::Found { order, .. } => Some(algebra::verify_isomorphism_with_order(
            f,
            &c,
            Arc::new(Poset::new(order.clone())?),
            ring,
        )),
        EmbeddingOrder::NoEmbedding { .. } => None,
    };
    match &iso {
        Some(Ok(r)) => report.holds("isomorphism", r.is_isomorphism, r.reason.clone().unwrap_or_default()),
        Some(Err(_)) => report.push("isomorphism", Status::Fail, "ψ is not inverse to φ"),
        None => report.push("isomorphism", Status::Fail, "no partial order contains <|_l"),
    }

    // self-checks: each passes when the computation raised no violation
    report.push("thm.ampleImplications", Status::Pass, "");
    report.holds("thm.subbandIsSemilattice", !f.is_subband() || f.is_subsemilattice(), "");
    if f.is_e_ehresmann() {
        match f.check_ehresmann_equivalence() {
            Ok(v) => report.push("thm.ehresmannEquivalence", Status::Pass, format!("both {v}")),
            Err(e) => report.push("thm.ehresmannEquivalence", Status::Fail, e.to_string()),
        }
    } else {
        report.push("thm.ehresmannEquivalence", Status::Skipped, "E is not a subsemilattice");
    }
    order_self_checks(report, f);
    match algebra::verify_homomorphism(f, &c, ring) {
        Ok(_) => report.push("thm.homomorphismIffGeneralizedRightAmple", Status::Pass, ""),
        Err(e) => report.push("thm.homomorphismIffGeneralizedRightAmple", Status::Fail, e.to_string()),
    }
    match iso {
        Some(Ok(r)) => {
            report.holds("thm.mobiusInverse", r.mobius_inverse_ok, "");
            report.holds("thm.psiInvertsPhi", r.psi_after_phi_identity && r.phi_after_psi_identity, "");
        }
        Some(Err(e)) => {
            report.push("thm.mobiusInverse", Status::Fail, e.to_string());
            report.push("thm.psiInvertsPhi", Status::Fail, e.to_string());
        }
        None => report.skip_all(&["thm.mobiusInverse", "thm.psiInvertsPhi"], "no embedding order"),
    }
    Ok(())
}

fn order_lines(report: &mut Report, f: &EFountainStructure) -> Result<()> {
    let tri = orders::tri_left(f)?;
    let d = orders::diagnose(&tri);
    report.holds("triLeftPartialOrder", d.is_partial_order, "");
    report.holds("triLeftSymmetric", tri.is_symmetric(), "");
    order_self_checks(report, f);
    // restore the canonical order of lines
    report
        .lines
        .sort_by_key(|l| ANALYZE_CHECKS.iter().position(|c| *c == l.check).unwrap_or(usize::MAX));
    Ok(())
}

fn order_self_checks(report: &mut Report, f: &EFountainStructure) {
    match orders::tri_left(f) {
        Ok(_) => report.push("thm.triLeftDefinitionsAgree", Status::Pass, ""),
        Err(e) => report.push("thm.triLeftDefinitionsAgree", Status::Fail, e.to_string()),
    }
    match orders::leq_l(f) {
        Ok(_) => report.push("thm.leqLContained", Status::Pass, ""),
        Err(e) => report.push("thm.leqLContained", Status::Fail, e.to_string()),
    }
}

/// Runs the Catalan verification and renders one line per stage. Stages not
/// reached after an error are SKIPPED.
pub fn catalan_report(degree: usize, ring: RingSpec) -> Result<Report> {
    let v = match ring {
        RingSpec::Int => catalan::verify_catalan_isomorphism(degree, &Integers)?,
        RingSpec::Rational => catalan::verify_catalan_isomorphism(degree, &Rationals)?,
        RingSpec::Mod(m) => catalan::verify_catalan_isomorphism(degree, &IntegersMod::new(m)?)?,
    };
    let mut report = Report::new(format!("catalan-{degree} over {}", v.ring));
    for stage in CATALAN_STAGES {
        let recorded: Vec<_> = v.stages.iter().filter(|s| s.stage == stage).collect();
        match recorded.as_slice() {
            [] => report.push(stage, Status::Skipped, "earlier stage failed"),
            stages => {
                let passed = stages.iter().all(|s| s.passed);
                let detail: Vec<&str> = stages.iter().map(|s| s.detail.as_str()).filter(|d| !d.is_empty()).collect();
                report.holds(stage, passed, detail.join("; "));
            }
        }
    }
    Ok(report)
}

/// One line per enumerated structure: PASS when `φ` is multiplicative
/// exactly when the generalized right ample identity holds and, for
/// subsemilattice `E`, right ample agrees with generalized right ample.
pub fn search_line(entry: &CorpusEntry) -> ReportLine {
    let outcome = (|| -> Result<String> {
        let f = analyze_reduced_e_fountain(&entry.semigroup, &entry.e_set)?;
        let c = build_category(&f)?;
        let homomorphism = algebra::verify_homomorphism(&f, &c, &Integers)?.holds();
        let generalized = f.check_generalized_right_ample()?.holds();
        let mut text = format!("homomorphism={homomorphism} generalizedRightAmple={generalized}");
        if f.is_subsemilattice() {
            let right = f.check_ehresmann_equivalence()?;
            text.push_str(&format!(" rightAmple={right}"));
        }
        Ok(text)
    })();
    match outcome {
        Ok(witness) => ReportLine {
            check: entry.name.clone(),
            status: Status::Pass,
            witness,
        },
        Err(e) => ReportLine {
            check: entry.name.clone(),
            status: Status::Fail,
            witness: e.to_string(),
        },
    }
}

/// Lazily checks every structure of order at most `max_order`.
pub fn search_lines(max_order: usize) -> Result<impl Iterator<Item = ReportLine>> {
    if !(1..=4).contains(&max_order) {
        return Err(Error::InvalidArgument(format!("max order must be in 1..=4, got {max_order}")));
    }
    Ok(corpus::enumerate_structures(max_order).map(|e| search_line(&e)))
}

pub fn search_report(max_order: usize) -> Result<Report> {
    let mut report = Report::new(format!("search up to order {max_order}"));
    report.lines.extend(search_lines(max_order)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::generate_catalan;

    #[test]
    fn line_rendering() {
        let mut r = Report::new("x");
        r.push("a", Status::Pass, "");
        r.push("b", Status::Fail, "w=1");
        r.push("c", Status::Skipped, "why");
        assert_eq!(r.render(), "structure: x\na: PASS\nb: FAIL w=1\nc: SKIPPED why\n");
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn catalan3_report() {
        let m = generate_catalan(3).unwrap();
        let r = analyze_report("catalan-3", m.semigroup(), None, RingSpec::Int);
        let names: Vec<&str> = r.lines.iter().map(|l| l.check.as_str()).collect();
        assert_eq!(names, ANALYZE_CHECKS);
        assert_eq!(r.status("rightAmple"), Some(Status::Fail));
        assert_eq!(r.line("rightAmple").unwrap().witness, "a=[1,3,3] e=[2,2,3]");
        assert_eq!(r.status("generalizedRightAmple"), Some(Status::Pass));
        assert_eq!(r.status("isomorphism"), Some(Status::Pass));
        for l in r.lines.iter().filter(|l| l.check.starts_with("thm.")) {
            assert_ne!(l.status, Status::Fail, "{l}");
        }
    }

    #[test]
    fn rectangular_band_report() {
        let e = corpus::rectangular_band(2);
        let r = analyze_report(&e.name, &e.semigroup, Some(&e.e_set), RingSpec::Rational);
        assert_eq!(r.status("rightAmple"), Some(Status::Fail));
        assert_eq!(r.status("generalizedRightAmple"), Some(Status::Pass));
        assert_eq!(r.status("isomorphism"), Some(Status::Fail));
        assert_eq!(r.status("phiHomomorphism"), Some(Status::Pass));
        assert_eq!(r.status("phiInjective"), Some(Status::Fail));
        assert_eq!(r.status("thm.mobiusInverse"), Some(Status::Skipped));
    }

    #[test]
    fn failed_analysis_skips_everything_else() {
        let e = &corpus::reference_entries().into_iter().find(|e| e.name == "left-zero-2").unwrap();
        let r = analyze_report(&e.name, &e.semigroup, Some(&e.e_set), RingSpec::Int);
        assert_eq!(r.lines.len(), ANALYZE_CHECKS.len());
        assert_eq!(r.status("reducedEFountain"), Some(Status::Fail));
        assert!(r.lines[1..].iter().all(|l| l.status == Status::Skipped));
    }

    #[test]
    fn catalan_report_passes() {
        let r = catalan_report(3, RingSpec::Mod(2)).unwrap();
        assert!(!r.has_failures(), "{r}");
        assert_eq!(r.lines.len(), CATALAN_STAGES.len());
    }

    #[test]
    fn reports_are_deterministic() {
        let m = generate_catalan(4).unwrap();
        let a = analyze_report("c4", m.semigroup(), None, RingSpec::Int).render();
        let b = analyze_report("c4", m.semigroup(), None, RingSpec::Int).render();
        assert_eq!(a, b);
    }
}
