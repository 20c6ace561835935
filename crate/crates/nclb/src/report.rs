//! Check results shared by the verification suites and the CLI.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

impl Check {
    pub fn pass(id: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::Pass, witness: witness.into() }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::Fail, witness: witness.into() }
    }

    pub fn skip(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::Skip, witness: reason.into() }
    }

    pub fn from_bool(id: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Check::pass(id, witness)
        } else {
            Check::fail(id, witness)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Keeps the smallest failing sample seen, by a caller-supplied size.
#[derive(Default)]
pub struct Shrink {
    best: Option<(usize, String)>,
    count: usize,
}

impl Shrink {
    pub fn record(&mut self, size: usize, witness: impl FnOnce() -> String) {
        self.count += 1;
        if self.best.as_ref().is_none_or(|(s, _)| size < *s) {
            self.best = Some((size, witness()));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// A pass line with `ok` text, or a fail line naming the smallest witness.
    pub fn finish(self, id: &str, samples: usize, ok: impl Into<String>) -> Check {
        match self.best {
            None => Check::pass(id, ok),
            Some((_, w)) => Check::fail(id, format!("{} of {samples} samples failed; smallest: {w}", self.count)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        SuiteReport { suite: suite.into(), checks, elapsed_ms: None }
    }

    pub fn skipped(suite: impl Into<String>, reason: impl Into<String>) -> Self {
        let suite = suite.into();
        SuiteReport { checks: vec![Check::skip(suite.clone(), reason)], suite, elapsed_ms: None }
    }

    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}
