//! Error taxonomy shared across the crate.
//!
//! Everything that can go wrong is either a caller mistake (mismatched
//! fields, zero where nonzero is required) or an honest resource refusal
//! (`BudgetExceeded`, `PrecisionExceeded`, `SearchExhausted`). Budget
//! refusals are never silent wrong answers; callers surface them as
//! `Unsupported` verdicts.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A factorization or search ran past its configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// `multiplicative_order` on a non-unit residue.
    #[error("not a unit: gcd({a}, {n}) != 1")]
    NotAUnit { a: i64, n: u64 },

    #[error("division by zero")]
    DivisionByZero,

    /// Root reconstruction could not meet its rigorous bound within the
    /// configured precision ladder.
    #[error("precision exceeded: {0}")]
    PrecisionExceeded(String),

    /// Every resolvent retry produced zero; reported, never guessed around.
    #[error("resolvent degenerate: {0}")]
    ResolventDegenerate(String),

    /// Two routes that must agree disagreed; indicates a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// A bounded search (e.g. the beta prime search) hit its cap.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// A synthesized object failed its mandatory self-verification.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    /// Constructor invoked where the prediction says none exists.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Operands live in different fields, or a place does not match the
    /// base field of the element it is paired with.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
