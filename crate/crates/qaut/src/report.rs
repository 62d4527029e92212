//! Shared verdict and report types.
//!
//! Every verification entry point produces [`CheckReport`]s that aggregate
//! into a [`StructureReport`].  Reports serialize to JSON with a stable field
//! order; timing is optional so that reports can be byte-identical across
//! runs.

use serde::Serialize;

use crate::rewrite::Membership;

/// Outcome of a single check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Severity-combining: any Fail dominates, then any Inconclusive.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    /// Maps a membership verdict for a "must lie in the ideal" obligation:
    /// a nonzero normal form under a confluent system is a failure at the
    /// configured budget, while raw/exhausted systems are inconclusive.
    pub fn from_membership(m: &Membership) -> Verdict {
        match m {
            Membership::InIdeal => Verdict::Pass,
            Membership::NotInIdealUpTo(_) => Verdict::Fail,
            Membership::Inconclusive(_) => Verdict::Inconclusive,
        }
    }
}

/// Report for one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    /// Stable check identifier, e.g. `hopf.coproduct_well_defined`.
    pub check: String,
    pub verdict: Verdict,
    /// Human-readable witness for non-Pass verdicts (offending polynomial's
    /// normal form, residual norm, etc.).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Number of rewrite rules in the system that ran the check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rules_used: Option<usize>,
    /// Wall-clock milliseconds; omitted unless timing was requested, so that
    /// reports stay byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        CheckReport {
            check: check.into(),
            verdict,
            witness: None,
            rules_used: None,
            elapsed_ms: None,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn with_rules_used(mut self, n: usize) -> Self {
        self.rules_used = Some(n);
        self
    }
}

/// Caps witness strings so reports stay readable; normal forms can be huge.
pub fn clip_witness(s: &str) -> String {
    const MAX: usize = 240;
    if s.chars().count() <= MAX {
        s.to_string()
    } else {
        let head: String = s.chars().take(MAX).collect();
        format!("{head}… [truncated]")
    }
}

/// Folds many sub-check outcomes into one [`CheckReport`], keeping the first
/// witness of the severity class that ends up determining the verdict.
pub struct CheckAccumulator {
    check: String,
    verdict: Verdict,
    fail_witness: Option<String>,
    inconclusive_witness: Option<String>,
    rules_used: Option<usize>,
}

impl CheckAccumulator {
    pub fn new(check: impl Into<String>) -> Self {
        CheckAccumulator {
            check: check.into(),
            verdict: Verdict::Pass,
            fail_witness: None,
            inconclusive_witness: None,
            rules_used: None,
        }
    }

    pub fn with_rules_used(mut self, n: usize) -> Self {
        self.rules_used = Some(n);
        self
    }

    /// Records one sub-check; `witness` is only rendered when it is the first
    /// of its severity class.
    pub fn add(&mut self, verdict: Verdict, witness: impl FnOnce() -> String) {
        match verdict {
            Verdict::Pass => {}
            Verdict::Fail => {
                if self.fail_witness.is_none() {
                    self.fail_witness = Some(clip_witness(&witness()));
                }
            }
            Verdict::Inconclusive => {
                if self.inconclusive_witness.is_none() {
                    self.inconclusive_witness = Some(clip_witness(&witness()));
                }
            }
        }
        self.verdict = self.verdict.combine(verdict);
    }

    pub fn current(&self) -> Verdict {
        self.verdict
    }

    pub fn finish(self) -> CheckReport {
        let witness = match self.verdict {
            Verdict::Pass => None,
            Verdict::Fail => self.fail_witness,
            Verdict::Inconclusive => self.inconclusive_witness,
        };
        CheckReport {
            check: self.check,
            verdict: self.verdict,
            witness,
            rules_used: self.rules_used,
            elapsed_ms: None,
        }
    }
}

/// Aggregated report for one presentation or one CLI command.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// Name of the presentation or suite the checks belong to.
    pub subject: String,
    pub checks: Vec<CheckReport>,
    pub overall: Verdict,
}

impl StructureReport {
    pub fn new(subject: impl Into<String>, checks: Vec<CheckReport>) -> Self {
        let overall = checks
            .iter()
            .fold(Verdict::Pass, |acc, c| acc.combine(c.verdict));
        StructureReport {
            subject: subject.into(),
            checks,
            overall,
        }
    }
}
