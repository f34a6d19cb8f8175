use alloc::string::String;
use core::fmt;

/// Which engine limit tripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Width,
    Pairs,
    Basis,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Limit::Width => "max_width",
            Limit::Pairs => "max_pairs",
            Limit::Basis => "max_basis",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `increasing_maps(d, n)` with `d > n`.
    NoIncreasingMap { domain: usize, codomain: usize },
    /// Family declaration rejected by the ring builder.
    InvalidFamily(String),
    /// Order spec does not match the declared families.
    InvalidOrder(String),
    /// Index tuple has the wrong length or breaks the family constraint.
    InvalidVariable(String),
    /// Operands built over different rings.
    MixedRing,
    /// Leading data requested from the zero polynomial.
    ZeroPolynomial,
    /// `quotient(b, a)` where `a` does not divide `b`.
    NotDivisible,
    /// Truncation level below the width of the input.
    TruncationTooNarrow { level: usize, width: usize },
    /// Requested mode is not available for the given order.
    Configuration(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoIncreasingMap { domain, codomain } => write!(
                f,
                "no strictly increasing map from {domain} points into {codomain} points"
            ),
            Error::InvalidFamily(msg) => write!(f, "invalid family: {msg}"),
            Error::InvalidOrder(msg) => write!(f, "invalid order: {msg}"),
            Error::InvalidVariable(msg) => write!(f, "invalid variable: {msg}"),
            Error::MixedRing => f.write_str("operands belong to different rings"),
            Error::ZeroPolynomial => f.write_str("zero polynomial has no leading term"),
            Error::NotDivisible => f.write_str("monomial quotient of a non-divisor"),
            Error::TruncationTooNarrow { level, width } => write!(
                f,
                "truncation level {level} is below the generator width {width}"
            ),
            Error::Configuration(msg) => write!(f, "configuration error: {msg}"),
        }
    }
}
