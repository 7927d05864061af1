//! Result type shared by all identity checks.

use std::fmt;
use std::time::Instant;

/// Verdict of a single check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
        }
    }
}

/// A reproducible counterexample: which arguments were used and the non-zero
/// residual they produced, both in canonical printed form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub arguments: String,
    pub residual: String,
}

/// Outcome of one named identity check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub id: String,
    pub status: CheckStatus,
    pub witness: Option<Witness>,
    pub millis: u64,
}

impl CheckReport {
    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Runs `body`, recording its duration; a returned witness means failure.
    pub fn run(id: &str, body: impl FnOnce() -> Option<Witness>) -> CheckReport {
        let start = Instant::now();
        let witness = body();
        let millis = start.elapsed().as_millis() as u64;
        CheckReport {
            id: id.to_string(),
            status: if witness.is_some() { CheckStatus::Fail } else { CheckStatus::Pass },
            witness,
            millis,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} ms)", self.id, self.status, self.millis)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  arguments: {}\n  residual: {}", w.arguments, w.residual)?;
        }
        Ok(())
    }
}
