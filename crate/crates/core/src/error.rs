use std::fmt;

use thiserror::Error;

/// A single violated condition on a parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ModulusTooSmall { m: i64 },
    ModulusEven { m: i64 },
    OrderNotPositive { n: i64 },
    ROutOfRange { r: i64, m: i64 },
    TooLarge { limit: i64 },
    RNotCoprime { r: i64, m: i64 },
    PowerCongruence { r: i64, n: i64, m: i64 },
    TwistCongruence { s: i64, r: i64, m: i64 },
}

impl Violation {
    pub fn is_scope(&self) -> bool {
        matches!(self, Violation::ModulusEven { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ModulusTooSmall { m } => write!(f, "m = {m} must be at least 3"),
            Violation::ModulusEven { m } => write!(f, "m = {m} is even: m even out of scope"),
            Violation::OrderNotPositive { n } => write!(f, "n = {n} must be positive"),
            Violation::ROutOfRange { r, m } => {
                write!(f, "r = {r} must satisfy 1 < r < m = {m} (abelian groups are rejected)")
            }
            Violation::TooLarge { limit } => write!(f, "m and n must not exceed {limit}"),
            Violation::RNotCoprime { r, m } => write!(f, "gcd(r, m) = gcd({r}, {m}) must be 1"),
            Violation::PowerCongruence { r, n, m } => {
                write!(f, "r^n = {r}^{n} is not congruent to 1 mod {m}")
            }
            Violation::TwistCongruence { s, r, m } => {
                write!(f, "s(r-1) = {s}*({r}-1) is not divisible by {m}")
            }
        }
    }
}

fn join(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {}", join(.0))]
    Validation(Vec<Violation>),
    #[error("out of scope: {}", join(.0))]
    OutOfScope(Vec<Violation>),
    #[error("usage: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("formula inconsistency: {0}")]
    FormulaInconsistency(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
