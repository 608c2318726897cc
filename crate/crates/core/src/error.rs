use std::fmt;

/// Errors surfaced by the field and polynomial routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested modulus is not an odd prime in the supported range.
    UnsupportedModulus { p: u64, reason: &'static str },
    /// Attempted to invert zero.
    ZeroInverse,
    /// Transform length is not a power of two within the modulus' two-adic range.
    UnsupportedSize { size: usize, modulus: u64 },
    /// A series reciprocal (or a Graeffe denominator) lacks a unit constant term.
    BadConstantTerm,
    /// Input lengths are inconsistent with the requested truncation orders.
    BadDimensions(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedModulus { p, reason } => {
                write!(f, "unsupported modulus {p}: {reason}")
            }
            Error::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            Error::UnsupportedSize { size, modulus } => {
                write!(f, "transform size {size} is not supported modulo {modulus}")
            }
            Error::BadConstantTerm => write!(f, "constant term must be 1"),
            Error::BadDimensions(msg) => write!(f, "dimension mismatch: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
