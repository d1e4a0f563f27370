//! Structured pass/fail outcomes shared by every checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// Every check up to an explicit bound passed; nothing is claimed beyond it.
    BoundedPass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::BoundedPass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::BoundedPass => "bounded-pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// `pair` holds two elements whose commutator is nontrivial.
    NonCommuting,
    /// `pair` holds two elements that should have been equal.
    Unequal,
    /// `pair` holds an element and the conjugator it failed to be contained under.
    NotContained,
    /// A set was not displaced; `power` records the exponent.
    NotDisplaced,
    NotInvariant,
    NotScalar,
    /// An exhaustive search over a stated space found no witness.
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure<E> {
    pub condition: String,
    pub kind: FailureKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(E, E)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<u64>,
}

impl<E> Failure<E> {
    pub fn new(kind: FailureKind, condition: impl Into<String>) -> Self {
        Failure {
            condition: condition.into(),
            kind,
            pair: None,
            power: None,
        }
    }

    pub fn with_pair(mut self, a: E, b: E) -> Self {
        self.pair = Some((a, b));
        self
    }

    pub fn at_power(mut self, p: u64) -> Self {
        self.power = Some(p);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport<E> {
    pub property: String,
    pub subject: String,
    pub verdict: Verdict,
    /// Named witness elements echoed back from the certificate.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<(String, E)>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bounds: BTreeMap<String, u64>,
    pub checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure<E>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl<E> PropertyReport<E> {
    /// Starts a report with verdict `pass`; `fail` and `bounded` adjust it.
    pub fn new(property: impl Into<String>, subject: impl Into<String>) -> Self {
        PropertyReport {
            property: property.into(),
            subject: subject.into(),
            verdict: Verdict::Pass,
            witness: Vec::new(),
            bounds: BTreeMap::new(),
            checks: Vec::new(),
            failure: None,
            notes: Vec::new(),
        }
    }

    pub fn witness(mut self, name: impl Into<String>, e: E) -> Self {
        self.witness.push((name.into(), e));
        self
    }

    pub fn bound(mut self, name: impl Into<String>, value: u64) -> Self {
        self.bounds.insert(name.into(), value);
        self
    }

    pub fn record(&mut self, check: impl Into<String>) {
        self.checks.push(check.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn fail(&mut self, failure: Failure<E>) {
        self.verdict = Verdict::Fail;
        self.failure = Some(failure);
    }

    /// Downgrades a pass to bounded-pass; failures stay failures.
    pub fn bounded(mut self) -> Self {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::BoundedPass;
        }
        self
    }

    pub fn not_applicable(mut self, why: impl Into<String>) -> Self {
        self.verdict = Verdict::NotApplicable;
        self.notes.push(why.into());
        self
    }

    pub fn is_success(&self) -> bool {
        self.verdict.is_success()
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// Folds the checks of a sub-report in; a failing sub-report fails this one.
    pub fn absorb(&mut self, prefix: &str, other: PropertyReport<E>) {
        for c in other.checks {
            self.checks.push(format!("{prefix}: {c}"));
        }
        self.notes.extend(other.notes);
        if let Some(mut f) = other.failure {
            f.condition = format!("{prefix}: {}", f.condition);
            self.fail(f);
        } else if other.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn map_elems<F, T>(self, mut f: F) -> PropertyReport<T>
    where
        F: FnMut(E) -> T,
    {
        PropertyReport {
            property: self.property,
            subject: self.subject,
            verdict: self.verdict,
            witness: self.witness.into_iter().map(|(n, e)| (n, f(e))).collect(),
            bounds: self.bounds,
            checks: self.checks,
            failure: self.failure.map(|fl| Failure {
                condition: fl.condition,
                kind: fl.kind,
                pair: fl.pair.map(|(a, b)| (f(a), f(b))),
                power: fl.power,
            }),
            notes: self.notes,
        }
    }
}
