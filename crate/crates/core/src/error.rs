use crate::ring::RingSpec;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("({i},{j}) is not an upper triangular position")]
    NotUpperTriangular { i: usize, j: usize },
    #[error("expected a modular ring Zmod:m, found {found}")]
    NotModular { found: RingSpec },
    #[error("bad interval [{h},{j}] for dimension {n}")]
    BadInterval { h: usize, j: usize, n: usize },
    #[error("variable index underflow when shifting by {shift}")]
    IndexUnderflow { shift: i64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumeration needs {needed} points but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("invalid matrix data: {0}")]
    BadMatrixData(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Failure while parsing a polynomial or ring element from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: expected {expected}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
}

impl ParseError {
    pub fn new(position: usize, expected: impl Into<String>) -> Self {
        ParseError {
            position,
            expected: expected.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
