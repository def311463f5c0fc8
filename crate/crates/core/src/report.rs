use std::fmt;

/// One failed check in a validation report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

/// Outcome of a report-style validator: a list of named failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, check: &str, detail: impl Into<String>) {
        self.violations.push(Violation { check: check.to_string(), detail: detail.into() });
    }

    pub fn require(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.push(check, detail());
        }
    }

    /// Whether the named check produced no violation.
    pub fn passed(&self, check: &str) -> bool {
        self.violations.iter().all(|v| v.check != check)
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "[{}] {}", v.check, v.detail)?;
        }
        Ok(())
    }
}
