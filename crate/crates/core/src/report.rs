//! Verification report: a flat list of named numeric checks.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// How `measured` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// |measured − expected| ≤ tol
    Close,
    /// measured ≥ expected − tol
    AtLeast,
    /// measured ≤ expected + tol
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub measured: f64,
    pub expected: f64,
    pub tol: f64,
    #[serde(skip)]
    pub relation: Relation,
}

impl Check {
    pub fn new(id: impl Into<String>, relation: Relation, measured: f64, expected: f64, tol: f64) -> Self {
        let mut c = Self {
            id: id.into(),
            status: Status::Fail,
            measured,
            expected,
            tol,
            relation,
        };
        c.evaluate();
        c
    }

    pub fn close(id: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Self::new(id, Relation::Close, measured, expected, tol)
    }

    pub fn at_least(id: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(id, Relation::AtLeast, measured, bound, 0.0)
    }

    pub fn at_most(id: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(id, Relation::AtMost, measured, bound, 0.0)
    }

    pub fn count(id: impl Into<String>, measured: usize, expected: usize) -> Self {
        Self::close(id, measured as f64, expected as f64, 0.0)
    }

    pub fn flag(id: impl Into<String>, ok: bool) -> Self {
        Self::close(id, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    fn evaluate(&mut self) {
        let ok = match self.relation {
            Relation::Close => (self.measured - self.expected).abs() <= self.tol,
            Relation::AtLeast => self.measured >= self.expected - self.tol,
            Relation::AtMost => self.measured <= self.expected + self.tol,
        };
        self.status = if ok { Status::Pass } else { Status::Fail };
    }

    /// Shifts the measured value far outside its tolerance.
    pub fn corrupt(&mut self) {
        let shift = 1.0 + self.tol + self.measured.abs();
        self.measured = match self.relation {
            Relation::AtLeast => self.expected - self.tol - shift,
            _ => self.expected + self.tol + shift,
        };
        self.evaluate();
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: String,
    pub checks: Vec<Check>,
    pub overall: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        let overall = if checks.iter().all(Check::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            suite: suite.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            checks,
            overall,
            timestamp: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
