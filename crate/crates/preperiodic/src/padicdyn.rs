//! The totally p-adic side for odd primes.
//!
//! Over C_p the filled Julia set of x^2 + c obeys a valuation dichotomy:
//! when |c|_p <= 1 it is the closed unit ball, and when |c|_p > 1 every
//! bounded orbit starts on the sphere |x|^2 = |c|_p. For points of Q_p
//! itself that sphere is reachable only when -c is a square in Q_p, which
//! splits the classification of *totally p-adic* preperiodic points
//! (all conjugates in Q_p) into a trichotomy:
//!
//! * |c|_p <= 1 — finite (the unit ball has capacity p^(-1/(p-1)) < 1);
//!   nonempty whenever a fixed point or 2-cycle survives in Q_p, i.e.
//!   1 - 4c or -3 - 4c is a square in Q_p;
//! * |c|_p > 1 and -c is not a square in Q_p — empty;
//! * |c|_p > 1 and -c is a square in Q_p — infinite, and the set is a
//!   Cantor set inside Q_p.
//!
//! Everything reduces to valuations and quadratic residues, so it is all
//! exact integer arithmetic.

use crate::exact::nt;
use crate::realdyn::TrichotomyTag;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// p-adic valuation with the usual convention v(0) = +infinity. The
/// derived ordering is the valuation ordering (Infinity largest).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PAdicError {
    NotPrime(u64),
    TwoUnsupported,
}

impl fmt::Display for PAdicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicError::NotPrime(p) => write!(f, "{} is not prime", p),
            PAdicError::TwoUnsupported => {
                write!(f, "p = 2 is not supported; the residue dichotomy needs p odd")
            }
        }
    }
}

impl std::error::Error for PAdicError {}

/// Shape of the filled Julia set of x^2 + c over C_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PAdicShape {
    /// |c|_p <= 1: the closed unit ball.
    UnitBall,
    /// |c|_p > 1: contained in the sphere |x|^2 = |c|_p; a bounded orbit
    /// keeps valuation c_valuation / 2 forever (c_valuation = v_p(c) < 0).
    Sphere { c_valuation: i64 },
}

/// Which small cycle certifies a totally p-adic preperiodic point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PAdicWitness {
    /// 1 - 4c is a square in Q_p: the fixed points of x^2 + c lie in Q_p.
    FixedPoint,
    /// -3 - 4c is a square in Q_p: the 2-cycle lies in Q_p.
    TwoCycle,
}

#[derive(Clone, Debug)]
pub struct PAdicTrichotomy {
    pub tag: TrichotomyTag,
    pub julia_shape: PAdicShape,
    pub witness: Option<PAdicWitness>,
    /// In the infinite branch the set is homeomorphic to a Cantor set
    /// sitting inside Q_p.
    pub cantor_in_qp: bool,
}

/// An odd prime p together with the arithmetic the classification needs.
#[derive(Clone, Debug)]
pub struct PAdicContext {
    p: u64,
    pb: BigInt,
}

impl PAdicContext {
    pub fn new(p: u64) -> Result<PAdicContext, PAdicError> {
        if !nt::is_prime_u64(p) {
            return Err(PAdicError::NotPrime(p));
        }
        if p == 2 {
            return Err(PAdicError::TwoUnsupported);
        }
        Ok(PAdicContext {
            p,
            pb: BigInt::from(p),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn val_int(&self, n: &BigInt) -> Valuation {
        if n.is_zero() {
            return Valuation::Infinity;
        }
        let mut v = 0i64;
        let mut rest = n.abs();
        loop {
            let (q, r) = rest.div_rem(&self.pb);
            if !r.is_zero() {
                return Valuation::Finite(v);
            }
            v += 1;
            rest = q;
        }
    }

    pub fn val(&self, q: &BigRational) -> Valuation {
        match (self.val_int(q.numer()), self.val_int(q.denom())) {
            (Valuation::Infinity, _) => Valuation::Infinity,
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => unreachable!("denominator of a rational is nonzero"),
        }
    }

    /// Residue mod p of the unit part of q != 0, i.e. of q / p^v(q).
    pub fn unit_residue(&self, q: &BigRational) -> u64 {
        assert!(!q.is_zero(), "zero has no unit part");
        let strip = |n: &BigInt| {
            let mut rest = n.clone();
            loop {
                let (d, r) = rest.div_rem(&self.pb);
                if !r.is_zero() {
                    return rest;
                }
                rest = d;
            }
        };
        let red = |n: &BigInt| -> u64 {
            let m = ((n % &self.pb) + &self.pb) % &self.pb;
            // in [0, p), fits easily
            let (_, digits) = m.to_u64_digits();
            digits.first().copied().unwrap_or(0)
        };
        let a = red(&strip(q.numer()));
        let b = red(&strip(q.denom()));
        // b is a unit mod p; invert by Fermat
        nt::mul_mod(a, nt::pow_mod(b, self.p - 2, self.p), self.p)
    }

    /// Is q a square in Q_p? Zero counts (0 = 0^2). For p odd and q != 0
    /// this is: even valuation, and the unit part a quadratic residue
    /// mod p (Euler's criterion).
    pub fn is_square(&self, q: &BigRational) -> bool {
        if q.is_zero() {
            return true;
        }
        match self.val(q) {
            Valuation::Finite(v) if v % 2 != 0 => false,
            _ => {
                let u = self.unit_residue(q);
                nt::pow_mod(u, (self.p - 1) / 2, self.p) == 1
            }
        }
    }
}

/// The valuation dichotomy for the filled Julia set over C_p.
pub fn classify_nonarch_filled_julia(ctx: &PAdicContext, c: &BigRational) -> PAdicShape {
    match ctx.val(c) {
        Valuation::Finite(v) if v < 0 => PAdicShape::Sphere { c_valuation: v },
        _ => PAdicShape::UnitBall,
    }
}

/// Do the fixed points of x^2 + c lie in Q_p (equivalently: is the
/// discriminant 1 - 4c a square in Q_p)?
pub fn has_totally_padic_fixed_point(ctx: &PAdicContext, c: &BigRational) -> bool {
    let disc = BigRational::one() - c * BigRational::from_integer(BigInt::from(4));
    ctx.is_square(&disc)
}

/// Classify the set of totally p-adic preperiodic points of x^2 + c.
pub fn classify_totally_padic(ctx: &PAdicContext, c: &BigRational) -> PAdicTrichotomy {
    let julia_shape = classify_nonarch_filled_julia(ctx, c);
    match julia_shape {
        PAdicShape::UnitBall => {
            let four = BigRational::from_integer(BigInt::from(4));
            let fixed_disc = BigRational::one() - c * &four;
            let cycle_disc = BigRational::from_integer(BigInt::from(-3)) - c * &four;
            let witness = if ctx.is_square(&fixed_disc) {
                Some(PAdicWitness::FixedPoint)
            } else if ctx.is_square(&cycle_disc) {
                Some(PAdicWitness::TwoCycle)
            } else {
                None
            };
            let tag = if witness.is_some() {
                TrichotomyTag::NonemptyFinite
            } else {
                TrichotomyTag::FiniteUnknownNonempty
            };
            PAdicTrichotomy {
                tag,
                julia_shape,
                witness,
                cantor_in_qp: false,
            }
        }
        PAdicShape::Sphere { .. } => {
            if ctx.is_square(&-c) {
                // here 1 - 4c = -4c (1 - 1/(4c)) differs from -4c by a
                // unit square (Hensel), so the fixed points are in Q_p too
                PAdicTrichotomy {
                    tag: TrichotomyTag::Infinite,
                    julia_shape,
                    witness: Some(PAdicWitness::FixedPoint),
                    cantor_in_qp: true,
                }
            } else {
                PAdicTrichotomy {
                    tag: TrichotomyTag::Empty,
                    julia_shape,
                    witness: None,
                    cantor_in_qp: false,
                }
            }
        }
    }
}
