//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph data (loops, undeclared endpoints, duplicate labels).
    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    /// Text input that does not parse (edge lists, monomials, orders, JSON).
    #[error("parse error: {0}")]
    Parse(String),

    /// An explicit budget constant was exceeded; the caller asked for more
    /// than the desk-scale limits allow.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Input that is syntactically fine but violates a documented
    /// precondition (not a 5-cycle, unknown variable, bad k, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Data that contradicts a structural guarantee of the theory: a
    /// reachability split that is not a partition, a cover whose 5-cycle
    /// support is not exactly one transversal triple, a guaranteed exchange
    /// factor that cannot be found. In fuzz mode these surface as findings.
    #[error("structural violation: {0}")]
    StructuralViolation(String),
}

impl Error {
    pub fn is_structural(&self) -> bool {
        matches!(self, Error::StructuralViolation(_))
    }
}
