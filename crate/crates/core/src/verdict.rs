use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Three-valued outcome of a decision procedure. `False` carries a witness,
/// `Undetermined` a reason; a checker never guesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    True,
    False { witness: String },
    Undetermined { reason: String },
}

impl Verdict {
    pub fn false_with(witness: impl Into<String>) -> Verdict {
        Verdict::False { witness: witness.into() }
    }

    pub fn undetermined(reason: impl Into<String>) -> Verdict {
        Verdict::Undetermined { reason: reason.into() }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Verdict::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Verdict::False { .. })
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self, Verdict::Undetermined { .. })
    }

    /// Conjunction: first failure wins, undetermined taints a would-be pass.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (v @ Verdict::False { .. }, _) => v,
            (_, v @ Verdict::False { .. }) => v,
            (v @ Verdict::Undetermined { .. }, _) => v,
            (_, v @ Verdict::Undetermined { .. }) => v,
            _ => Verdict::True,
        }
    }

    /// Collapse an `Error` from a sub-computation into a verdict.
    pub fn from_error(e: &Error) -> Verdict {
        match e {
            Error::Undetermined(r) => Verdict::undetermined(r.clone()),
            other => Verdict::undetermined(other.to_string()),
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::True => write!(f, "true"),
            Verdict::False { witness } => write!(f, "false ({witness})"),
            Verdict::Undetermined { reason } => write!(f, "undetermined ({reason})"),
        }
    }
}
