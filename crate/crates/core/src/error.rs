//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors produced by construction, evaluation, and parsing routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An integer operation left the 64-bit range.
    Overflow(&'static str),
    /// An argument violated a documented precondition.
    Domain(&'static str),
    /// Modular inverse requested for non-coprime operands.
    NotCoprime { a: u64, modulus: u64 },
    /// Primitive root requested for a modulus with non-cyclic unit group.
    NotCyclic(u64),
    /// Evaluation at (or too near) a pole of the expression.
    Pole(&'static str),
    /// Complex argument outside the convergence strip.
    StripViolation(&'static str),
    /// A parameter exceeded its desk-scale cap.
    CapExceeded { what: &'static str, limit: u64 },
    /// Text input could not be parsed; `line` is 1-based.
    Parse { line: usize, message: String },
    /// Ingested data failed a structural validation.
    Validation(String),
    /// Eigenvalue table misses a prime required by the requested sum.
    CoverageGap { first_missing: u64 },
    /// Two ingested objects disagree on shared parameters.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow(what) => write!(f, "64-bit overflow in {what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NotCoprime { a, modulus } => {
                write!(f, "{a} is not invertible modulo {modulus}")
            }
            Error::NotCyclic(q) => write!(f, "unit group modulo {q} is not cyclic"),
            Error::Pole(what) => write!(f, "pole encountered in {what}"),
            Error::StripViolation(what) => write!(f, "argument outside convergence strip: {what}"),
            Error::CapExceeded { what, limit } => {
                write!(f, "{what} exceeds the desk-scale cap {limit}")
            }
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::Validation(msg) => write!(f, "validation failed: {msg}"),
            Error::CoverageGap { first_missing } => {
                write!(f, "eigenvalue table does not cover prime {first_missing}")
            }
            Error::Inconsistent(msg) => write!(f, "inconsistent inputs: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
