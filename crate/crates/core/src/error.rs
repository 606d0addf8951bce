use thiserror::Error;

use crate::structure::{StructureClass, Violation};

/// Errors raised by the library. The CLI maps every variant except
/// [`Error::ContractViolation`] to exit status 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {id} out of range for ground set of size {n}")]
    OutOfRange { id: usize, n: usize },

    #[error("relation {relation} has arity {expected}, got a tuple of length {got}")]
    ArityMismatch {
        relation: String,
        expected: usize,
        got: usize,
    },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("structure is not a valid {class}: {}", first_violation(.violations))]
    Axiom {
        class: StructureClass,
        violations: Vec<Violation>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("search space too large: {0}")]
    SearchSpace(String),

    #[error("unsupported class {0} for this operation")]
    Unsupported(StructureClass),

    #[error("internal contract violated: {0}")]
    ContractViolation(String),
}

fn first_violation(violations: &[Violation]) -> String {
    match violations.first() {
        Some(v) if violations.len() == 1 => v.to_string(),
        Some(v) => format!("{v} (and {} more)", violations.len() - 1),
        None => "no violations recorded".to_string(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
