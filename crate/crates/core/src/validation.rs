use std::fmt;

/// One broken law together with the identifiers that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

/// Result of checking a structure against its laws; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: Vec<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness,
        });
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn into_result(self, what: &str) -> crate::Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(crate::Error::invalid(format!("{what}: {self}")))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .take(5)
            .map(|v| format!("{} [{}]", v.law, v.witness.join(", ")))
            .collect();
        write!(f, "{}", parts.join("; "))?;
        if self.violations.len() > 5 {
            write!(f, "; ... {} more", self.violations.len() - 5)?;
        }
        Ok(())
    }
}
