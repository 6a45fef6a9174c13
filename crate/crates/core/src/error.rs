use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structurally broken input: dangling or duplicate identifiers, wrong arities.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// Well-formed input that violates a law or a precondition.
    #[error("invalid: {0}")]
    Invalid(String),
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: String, limit: usize },
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn budget(what: impl Into<String>, limit: usize) -> Self {
        Error::Budget {
            what: what.into(),
            limit,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// A work counter shared by a search; exceeding `limit` aborts with [`Error::Budget`].
#[derive(Debug)]
pub struct Budget {
    what: &'static str,
    limit: usize,
    used: std::sync::atomic::AtomicUsize,
}

impl Budget {
    pub fn new(what: &'static str, limit: usize) -> Self {
        Budget {
            what,
            limit,
            used: std::sync::atomic::AtomicUsize::new(0),
        }
    }

    pub fn unlimited(what: &'static str) -> Self {
        Self::new(what, usize::MAX)
    }

    pub fn spend(&self, amount: usize) -> Result<()> {
        let before = self
            .used
            .fetch_add(amount, std::sync::atomic::Ordering::Relaxed);
        if before.saturating_add(amount) > self.limit {
            Err(Error::budget(self.what, self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> usize {
        self.used.load(std::sync::atomic::Ordering::Relaxed)
    }

    pub fn limit(&self) -> usize {
        self.limit
    }
}
