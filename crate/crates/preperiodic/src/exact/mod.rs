//! Exact arithmetic underpinnings: integer/rational polynomials with Sturm
//! root counting, integer factoring for squarefree decompositions,
//! fixed-point decimal rendering, real multiquadratic algebras with exact
//! embeddings, and literal parsing for rationals.

pub mod algebra;
pub mod embed;
pub mod fixed;
pub mod nt;
pub mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// Radicand of an algebra generator was not squarefree and > 1.
    InvalidRadicand(BigInt),
    /// More independent square roots requested than supported.
    TooManyRadicands(usize),
    /// Tried to combine elements of structurally different algebras.
    AlgebraMismatch,
    /// A literal could not be parsed as an exact rational.
    BadLiteral(String),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::InvalidRadicand(m) => {
                write!(f, "radicand {} is not squarefree and greater than 1", m)
            }
            ExactError::TooManyRadicands(n) => {
                write!(f, "{} independent radicands requested, at most 2 supported", n)
            }
            ExactError::AlgebraMismatch => {
                write!(f, "elements belong to different algebras")
            }
            ExactError::BadLiteral(s) => write!(f, "cannot parse {:?} as a rational", s),
        }
    }
}

impl std::error::Error for ExactError {}

/// Parse a decimal literal ("3", "-0.25", "+.5", "2.") into the exact
/// rational it denotes.
pub fn parse_decimal(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::BadLiteral(s.to_string());
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut num = BigInt::zero();
    for b in int_part.bytes().chain(frac_part.bytes()) {
        num = num * 10 + BigInt::from(b - b'0');
    }
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    if neg {
        num = -num;
    }
    Ok(BigRational::new(num, den))
}

/// Parse "A/B" with integer A, B (B nonzero) or a decimal literal.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let bad = || ExactError::BadLiteral(s.to_string());
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(t)
}

/// Convenience: squarefree decomposition n = k^2 m with m squarefree,
/// returned as (k, m). Sign of n travels with m; n = 0 gives (1, 0).
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let (k, m) = nt::squarefree_decompose(&n.abs());
    if n.is_negative() {
        (k, -m)
    } else {
        (k, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_literals() {
        assert_eq!(parse_decimal("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("-2").unwrap(), rat(-2, 1));
        assert_eq!(parse_decimal("+.5").unwrap(), rat(1, 2));
        assert_eq!(parse_decimal("2.").unwrap(), rat(2, 1));
        assert_eq!(parse_decimal(" 1.375 ").unwrap(), rat(11, 8));
        assert!(parse_decimal(".").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("1e3").is_err());
        assert!(parse_decimal("").is_err());
    }

    #[test]
    fn slash_literals() {
        assert_eq!(parse_rational("-3/7").unwrap(), rat(-3, 7));
        assert_eq!(parse_rational("10/4").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("1 / 5").unwrap(), rat(1, 5));
        assert_eq!(parse_rational("0.2").unwrap(), rat(1, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn squarefree_split_signs() {
        let (k, m) = squarefree_split(&BigInt::from(48));
        assert_eq!((k, m), (BigInt::from(4), BigInt::from(3)));
        let (k, m) = squarefree_split(&BigInt::from(-18));
        assert_eq!((k, m), (BigInt::from(3), BigInt::from(-2)));
        let (k, m) = squarefree_split(&BigInt::zero());
        assert_eq!((k, m), (BigInt::one(), BigInt::zero()));
    }
}
