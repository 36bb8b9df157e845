//! Integer and rational polynomials, constant term first, plus the Sturm
//! machinery used for exact real-root counting.
//!
//! The Sturm chain here is kept over rational coefficients (each member
//! rescaled by a positive constant to keep numerators small), so sign
//! variation counts are exact at rational points, at +-infinity, and — via
//! the algebra layer — at real quadratic surd points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Polynomial with integer coefficients, constant term first.
/// No trailing zero coefficients; the zero polynomial has an empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolynomial::new(cs)
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact division: `Some(q)` with `self = q * d` when `d` (monic) divides
    /// `self` over the integers, else `None`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = d.degree()?;
        if !d.is_monic() {
            return None;
        }
        let nd = match self.degree() {
            None => return None,
            Some(n) if n < dd => return None,
            Some(n) => n,
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let lead = rem[k + dd].clone();
            quot[k] = lead.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &lead * dc;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPolynomial::new(quot))
        } else {
            None
        }
    }

    /// Largest squarefree divisor, primitive with positive leading
    /// coefficient: self / gcd(self, self').
    pub fn squarefree_part(&self) -> IntPolynomial {
        if self.degree().map_or(true, |d| d == 0) {
            return self.clone();
        }
        let g = self.to_rational().gcd(&self.derivative().to_rational());
        let q = self
            .to_rational()
            .div_rem(&g)
            .0
            .primitive_integer();
        q
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", k)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPolynomial {
        if self.coeffs.len() <= 1 {
            return RatPolynomial::zero();
        }
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        RatPolynomial::new(cs)
    }

    pub fn neg(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &BigRational) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Quotient and remainder with deg rem < deg divisor. Divisor nonzero.
    pub fn div_rem(&self, d: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let dl = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = match self.degree() {
            None => return (RatPolynomial::zero(), RatPolynomial::zero()),
            Some(n) if n < dd => return (RatPolynomial::zero(), self.clone()),
            Some(n) => n,
        };
        let mut quot = vec![BigRational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let q = &rem[k + dd] / &dl;
            quot[k] = q.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let sub = &q * dc;
                rem[k + i] -= sub;
            }
        }
        (RatPolynomial::new(quot), RatPolynomial::new(rem))
    }

    /// Monic gcd (1 for coprime inputs, 0 only if both are zero).
    pub fn gcd(&self, other: &RatPolynomial) -> RatPolynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) if !l.is_one() => {
                let inv = BigRational::one() / l.clone();
                a.scale(&inv)
            }
            _ => a,
        }
    }

    /// Clear denominators and divide by content: integer, primitive,
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num_integer::gcd(g, c.clone());
        }
        let mut cs: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        if cs.last().map_or(false, |c| c.is_negative()) {
            for c in cs.iter_mut() {
                *c = -c.clone();
            }
        }
        IntPolynomial::new(cs)
    }
}

/// Sturm chain of `p`: p, p', then negated remainders down to a constant.
/// Each member is rescaled by a positive rational to an integer primitive
/// form, which leaves every sign evaluation unchanged.
pub fn sturm_chain(p: &RatPolynomial) -> Vec<RatPolynomial> {
    let mut chain = Vec::new();
    if p.is_zero() {
        return chain;
    }
    let scrub = |q: RatPolynomial| -> RatPolynomial {
        // positive rescale only — signs everywhere must be preserved
        if q.is_zero() {
            return q;
        }
        let ip = q.primitive_integer().to_rational();
        if ip.leading().unwrap().is_positive() == q.leading().unwrap().is_positive() {
            ip
        } else {
            ip.neg()
        }
    };
    chain.push(scrub(p.clone()));
    if p.degree() == Some(0) {
        return chain;
    }
    chain.push(scrub(p.derivative()));
    loop {
        let k = chain.len();
        let r = chain[k - 2].div_rem(&chain[k - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(scrub(r.neg()));
        if chain.last().unwrap().degree() == Some(0) {
            break;
        }
    }
    chain
}

/// Where a Sturm chain is evaluated.
pub enum SturmPoint<'a> {
    NegInf,
    Rational(&'a BigRational),
    PosInf,
}

/// Sign variations of the chain at a point, zeros dropped. Dropping zeros
/// makes the count equal to the variation count just *right* of the point,
/// so `variations(a) - variations(b)` counts roots in the half-open (a, b].
pub fn sign_variations_at(chain: &[RatPolynomial], at: SturmPoint) -> usize {
    let signs: Vec<Ordering> = chain
        .iter()
        .map(|q| match at {
            SturmPoint::Rational(x) => q.eval(x).cmp(&BigRational::zero()),
            SturmPoint::PosInf => match q.leading() {
                None => Ordering::Equal,
                Some(l) => l.cmp(&BigRational::zero()),
            },
            SturmPoint::NegInf => match (q.degree(), q.leading()) {
                (None, _) => Ordering::Equal,
                (Some(d), Some(l)) => {
                    let s = l.cmp(&BigRational::zero());
                    if d % 2 == 0 {
                        s
                    } else {
                        s.reverse()
                    }
                }
                _ => unreachable!(),
            },
        })
        .collect();
    count_variations(&signs)
}

pub fn count_variations(signs: &[Ordering]) -> usize {
    let mut v = 0;
    let mut prev: Option<Ordering> = None;
    for &s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if let Some(p) = prev {
            if p != s {
                v += 1;
            }
        }
        prev = Some(s);
    }
    v
}

/// Number of distinct real roots of `p` in the half-open interval (lo, hi].
/// A root exactly at `hi` is counted; one at `lo` is not (callers wanting a
/// closed interval test `p(lo) = 0` separately). Requires lo <= hi; the
/// count is taken on the squarefree part, so multiple roots count once.
pub fn sturm_count(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> usize {
    assert!(lo <= hi, "sturm_count: interval endpoints out of order");
    if p.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    let sf = p.squarefree_part().to_rational();
    let chain = sturm_chain(&sf);
    let va = sign_variations_at(&chain, SturmPoint::Rational(lo));
    let vb = sign_variations_at(&chain, SturmPoint::Rational(hi));
    va - vb
}

/// Distinct real roots of `p` anywhere on the line.
pub fn real_root_count(p: &IntPolynomial) -> usize {
    if p.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    let sf = p.squarefree_part().to_rational();
    let chain = sturm_chain(&sf);
    sign_variations_at(&chain, SturmPoint::NegInf) - sign_variations_at(&chain, SturmPoint::PosInf)
}
