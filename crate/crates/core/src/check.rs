use serde::{Deserialize, Serialize};

/// Tri-state outcome of a single verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Check {
    Pass {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Fail {
        witness: String,
    },
    Skipped {
        reason: String,
    },
}

impl Check {
    pub fn pass() -> Self {
        Check::Pass { note: None }
    }

    /// Passes for a structural reason (e.g. an empty subspace) rather than by computation.
    pub fn degenerate(note: impl Into<String>) -> Self {
        Check::Pass { note: Some(note.into()) }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Check::Fail { witness: witness.into() }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Check::Skipped { reason: reason.into() }
    }

    /// `None` means no counterexample was found.
    pub fn from_witness(w: Option<String>) -> Self {
        match w {
            None => Check::pass(),
            Some(w) => Check::fail(w),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Check::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Check::Skipped { .. })
    }

    /// Combines checks: the first failure wins, then the first skip.
    pub fn all(checks: impl IntoIterator<Item = Check>) -> Check {
        let mut skipped = None;
        for c in checks {
            match c {
                Check::Fail { .. } => return c,
                Check::Skipped { .. } if skipped.is_none() => skipped = Some(c),
                _ => {}
            }
        }
        skipped.unwrap_or_else(Check::pass)
    }
}
