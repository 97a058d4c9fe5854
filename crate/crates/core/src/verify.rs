//! Collected identity checks. Stages record every comparison they make so a
//! report can show both how much was checked and what failed.

use std::fmt::Display;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub which: String,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} != {}", self.which, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl VerificationRecord {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs == rhs` under the label `which`.
    pub fn check_eq<T: PartialEq + Display>(
        &mut self,
        which: impl Into<String>,
        lhs: T,
        rhs: T,
    ) -> bool {
        self.checks += 1;
        let ok = lhs == rhs;
        if !ok {
            self.violations.push(Violation {
                which: which.into(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        ok
    }

    /// Records `lhs <= rhs`.
    pub fn check_le<T: PartialOrd + Display>(
        &mut self,
        which: impl Into<String>,
        lhs: T,
        rhs: T,
    ) -> bool {
        self.checks += 1;
        let ok = lhs <= rhs;
        if !ok {
            self.violations.push(Violation {
                which: which.into(),
                lhs: lhs.to_string(),
                rhs: format!(">= {rhs}"),
            });
        }
        ok
    }

    /// Records a boolean condition.
    pub fn check(&mut self, which: impl Into<String>, ok: bool) -> bool {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                which: which.into(),
                lhs: "false".into(),
                rhs: "true".into(),
            });
        }
        ok
    }

    /// Records a failed stage.
    pub fn fail(&mut self, which: impl Into<String>, error: impl Display) {
        self.checks += 1;
        self.violations.push(Violation {
            which: which.into(),
            lhs: error.to_string(),
            rhs: "no error".into(),
        });
    }

    pub fn merge(&mut self, other: VerificationRecord) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}
