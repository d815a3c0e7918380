//! Regression harness: a catalog of finite rings and one check per claim,
//! each reporting pass, fail or skipped-by-guard.

mod catalog;
mod checks;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

pub use catalog::{catalog, CatalogEntry};

use crate::constructions::Limits;
use crate::decompositions::Flag;
use crate::dsl;
use crate::error::BuildError;
use crate::ring::Elem;
use crate::structure::Analysis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

/// Where a failed claim breaks, reproducible from the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<Flag>,
    pub reproduce: String,
}

impl Counterexample {
    pub fn element(an: &Analysis, ring: &str, a: Elem, flag: Option<Flag>) -> Self {
        Counterexample {
            ring: ring.into(),
            element: Some(a.0),
            display: Some(an.ring().show(a)),
            flag,
            reproduce: format!("ringlab element '{ring}' {}", a.0),
        }
    }

    pub fn ring(ring: &str, flag: Option<Flag>) -> Self {
        Counterexample {
            ring: ring.into(),
            element: None,
            display: None,
            flag,
            reproduce: format!("ringlab classify '{ring}' --witness"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubResult {
    pub subject: String,
    pub outcome: Outcome,
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl SubResult {
    pub fn pass(subject: impl Into<String>, note: impl Into<String>) -> Self {
        SubResult {
            subject: subject.into(),
            outcome: Outcome::Pass,
            note: note.into(),
            counterexample: None,
        }
    }

    pub fn fail(subject: impl Into<String>, note: impl Into<String>, cex: Option<Counterexample>) -> Self {
        SubResult {
            subject: subject.into(),
            outcome: Outcome::Fail,
            note: note.into(),
            counterexample: cex,
        }
    }

    pub fn skipped(subject: impl Into<String>, note: impl Into<String>) -> Self {
        SubResult {
            subject: subject.into(),
            outcome: Outcome::Skipped,
            note: note.into(),
            counterexample: None,
        }
    }

    /// Pass when `ok`, otherwise fail with `cex`.
    pub fn check(subject: impl Into<String>, ok: bool, note: impl Into<String>, cex: impl FnOnce() -> Option<Counterexample>) -> Self {
        if ok {
            Self::pass(subject, note)
        } else {
            Self::fail(subject, note, cex())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub claim: String,
    pub outcome: Outcome,
    pub details: Vec<SubResult>,
}

impl CheckResult {
    /// Fail if any sub-result fails, skipped if all are skipped, pass
    /// otherwise.
    pub fn from_subs(id: &str, claim: &str, details: Vec<SubResult>) -> Self {
        let outcome = if details.iter().any(|s| s.outcome == Outcome::Fail) {
            Outcome::Fail
        } else if details.iter().all(|s| s.outcome == Outcome::Skipped) {
            Outcome::Skipped
        } else {
            Outcome::Pass
        };
        CheckResult {
            id: id.into(),
            claim: claim.into(),
            outcome,
            details,
        }
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.details.iter().filter_map(|s| s.counterexample.as_ref())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} passed, {} failed, {} skipped", self.passed, self.failed, self.skipped)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

/// Orders ids with embedded numbers numerically: `C-2.3 < C-2.11`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<Result<u64, &str>> {
        let mut out = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
            let n = if digits > 0 {
                digits
            } else {
                rest.bytes().take_while(|b| !b.is_ascii_digit()).count()
            };
            let (head, tail) = rest.split_at(n);
            out.push(if digits > 0 { Ok(head.parse().unwrap_or(u64::MAX)) } else { Err(head) });
            rest = tail;
        }
        out
    }
    let (x, y) = (chunks(a), chunks(b));
    for (p, q) in x.iter().zip(&y) {
        let o = match (p, q) {
            (Ok(m), Ok(n)) => m.cmp(n),
            (Err(s), Err(t)) => s.cmp(t),
            (Ok(_), Err(_)) => Ordering::Less,
            (Err(_), Ok(_)) => Ordering::Greater,
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    x.len().cmp(&y.len())
}

/// Builds rings on demand and shares their analyses across checks.
pub struct Harness {
    limits: Limits,
    catalog: Vec<CatalogEntry>,
    cache: Mutex<HashMap<String, Arc<Analysis>>>,
}

impl Harness {
    pub fn new(limits: Limits) -> Self {
        Self::with_catalog(limits, catalog())
    }

    pub fn with_catalog(limits: Limits, catalog: Vec<CatalogEntry>) -> Self {
        Harness {
            limits,
            catalog,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn catalog(&self) -> &[CatalogEntry] {
        &self.catalog
    }

    /// Analysis of the ring described by `text`, cached by canonical form.
    pub fn analysis(&self, text: &str) -> Result<Arc<Analysis>, BuildError> {
        let expr = dsl::parse(text).map_err(|e| BuildError::Invalid(format!("{text}: {e}")))?;
        let key = dsl::canonical(&expr);
        if let Some(an) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(an.clone());
        }
        let an = Arc::new(Analysis::new(dsl::build(&expr, &self.limits)?));
        Ok(self
            .cache
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert(an)
            .clone())
    }

    /// Like [`Self::analysis`] but not retained; for one-off large rings.
    pub fn analysis_uncached(&self, text: &str) -> Result<Analysis, BuildError> {
        let expr = dsl::parse(text).map_err(|e| BuildError::Invalid(format!("{text}: {e}")))?;
        Ok(Analysis::new(dsl::build(&expr, &self.limits)?))
    }

    /// Every check id, in natural order.
    pub fn check_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .catalog
            .iter()
            .filter(|e| !e.expected.is_empty())
            .map(|e| e.id.clone())
            .chain(checks::CHECKS.iter().map(|c| c.id.to_string()))
            .collect();
        ids.sort_by(|a, b| natural_cmp(a, b));
        ids
    }

    pub fn run_check(&self, id: &str) -> Option<CheckResult> {
        if let Some(entry) = self.catalog.iter().find(|e| e.id == id && !e.expected.is_empty()) {
            return Some(checks::catalog_check(self, entry));
        }
        checks::CHECKS
            .iter()
            .find(|c| c.id == id)
            .map(|c| CheckResult::from_subs(c.id, c.claim, (c.run)(self)))
    }

    /// Runs the selected checks (all when `only` is empty) concurrently and
    /// reports them in id order. Unknown ids are returned as errors.
    pub fn run_all(&self, only: &[String]) -> Result<Report, String> {
        let all = self.check_ids();
        let selected: Vec<String> = if only.is_empty() {
            all
        } else {
            if let Some(bad) = only.iter().find(|id| !all.contains(id)) {
                return Err(format!("unknown check id {bad}"));
            }
            all.into_iter().filter(|id| only.contains(id)).collect()
        };
        let checks: Vec<CheckResult> = selected
            .par_iter()
            .map(|id| self.run_check(id).expect("known id"))
            .collect();
        let mut summary = Summary::default();
        for c in &checks {
            match c.outcome {
                Outcome::Pass => summary.passed += 1,
                Outcome::Fail => summary.failed += 1,
                Outcome::Skipped => summary.skipped += 1,
            }
        }
        Ok(Report { summary, checks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompositions::ElemPredicate;

    #[test]
    fn natural_order() {
        let mut ids = vec!["C-2.11", "C-2.3", "C-2.16-i", "EX-2.1-10", "EX-2.1-09", "T-3.6", "L-2.27", "C-2.13"];
        ids.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(ids, vec!["C-2.3", "C-2.11", "C-2.13", "C-2.16-i", "EX-2.1-09", "EX-2.1-10", "L-2.27", "T-3.6"]);
    }

    #[test]
    fn catalog_shape() {
        let c = catalog();
        assert_eq!(c.len(), 26);
        assert_eq!(c.iter().filter(|e| !e.expected.is_empty()).count(), 11);
        let h = Harness::new(Limits::default());
        for e in &c {
            let an = h.analysis(&e.expr).unwrap();
            assert_eq!(an.ring().label(), e.expr);
        }
        let five = c.iter().find(|e| e.id == "EX-2.1-05").unwrap();
        assert_eq!(five.expected_text(), "GWNC=+ WNC=-");
    }

    #[test]
    fn single_checks() {
        let h = Harness::new(Limits::default());
        for id in ["EX-2.1-10", "L-2.33", "P-2.25", "L-3.2"] {
            let r = h.run_check(id).unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{r:#?}");
        }
        assert!(h.run_check("NOPE").is_none());
        assert!(h.run_all(&["NOPE".into()]).is_err());
    }

    #[test]
    fn forced_failure_carries_a_reproducible_witness() {
        let mut cat = catalog();
        let entry = cat.iter_mut().find(|e| e.id == "EX-2.1-05").unwrap();
        entry.expected[1].1 = true; // claim Z(5) weakly nil-clean
        let h = Harness::with_catalog(Limits::default(), cat);
        let r = h.run_check("EX-2.1-05").unwrap();
        assert_eq!(r.outcome, Outcome::Fail);
        let cex = r.counterexamples().next().unwrap();
        assert_eq!(cex.ring, "Z(5)");
        assert_eq!(cex.element, Some(2));
        let an = h.analysis(&cex.ring).unwrap();
        assert!(ElemPredicate::WeaklyNilClean.test(&an, Elem(2)).is_none());
    }
}
