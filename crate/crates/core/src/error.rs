use std::fmt;

use thiserror::Error;

/// A single failed axiom, named by rule and the arrows (or pairs, triples)
/// that witness the failure. Validators return these as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub message: String,
}

impl Violation {
    pub fn new(rule: &'static str, message: impl Into<String>) -> Self {
        Self {
            rule,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("no unit subgroup of order {order} in {ring}")]
    NoUnitSubgroup { ring: String, order: u32 },

    #[error("involution {involution} is not defined on {ring}")]
    IncompatibleInvolution { involution: String, ring: String },

    #[error("involution {0} does not invert the unit subgroup")]
    NotTInverse(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("invalid {what}: {}", join(.violations))]
    Invalid {
        what: &'static str,
        violations: Vec<Violation>,
    },

    #[error("{0} is not a bisection")]
    NotBisection(String),

    #[error("not invariant, arrow {0} crosses")]
    NotInvariant(String),

    #[error("search space of size {needed} exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub fn invalid(what: &'static str, violations: Vec<Violation>) -> Self {
        Error::Invalid { what, violations }
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
