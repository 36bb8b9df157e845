//! Fixed-basis real algebras Q, Q(sqrt b), and Q(sqrt b, sqrt d) with exact
//! coordinate arithmetic.
//!
//! Basis elements are indexed by bitmask over the radicands: in the
//! biquadratic case e_0 = 1, e_1 = sqrt(b), e_2 = sqrt(d), e_3 = sqrt(b)
//! sqrt(d), with e_3^2 = b d rational. Products of basis elements land on a
//! single basis element with an integer factor, so multiplication is a
//! four-by-four table walk. With b, d squarefree, distinct, and > 1, the
//! algebra is a field, which the minimal-polynomial and sign routines rely
//! on (images of nonzero elements under embeddings are nonzero).

use super::poly::RatPolynomial;
use super::{nt, ExactError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    /// 0, 1, or 2 radicands; each squarefree and > 1; strictly increasing.
    rads: Vec<BigInt>,
}

impl Algebra {
    pub fn rationals() -> Arc<Algebra> {
        Arc::new(Algebra { rads: vec![] })
    }

    /// Build from any list of desired radicands: 1s and duplicates are
    /// dropped, order is normalized, non-squarefree input is an error.
    pub fn make(rads: &[BigInt]) -> Result<Arc<Algebra>, ExactError> {
        let mut clean: Vec<BigInt> = Vec::new();
        for r in rads {
            if !r.is_positive() {
                return Err(ExactError::InvalidRadicand(r.clone()));
            }
            let (k, m) = nt::squarefree_decompose(r);
            if !k.is_one() {
                return Err(ExactError::InvalidRadicand(r.clone()));
            }
            if m.is_one() || clean.contains(&m) {
                continue;
            }
            clean.push(m);
        }
        if clean.len() > 2 {
            return Err(ExactError::TooManyRadicands(clean.len()));
        }
        clean.sort();
        Ok(Arc::new(Algebra { rads: clean }))
    }

    pub fn quadratic(b: &BigInt) -> Result<Arc<Algebra>, ExactError> {
        Self::make(std::slice::from_ref(b))
    }

    pub fn dim(&self) -> usize {
        1 << self.rads.len()
    }

    pub fn radicands(&self) -> &[BigInt] {
        &self.rads
    }

    /// Product of the radicands selected by the basis bitmask.
    pub fn basis_radicand(&self, mask: usize) -> BigInt {
        let mut m = BigInt::one();
        for (j, r) in self.rads.iter().enumerate() {
            if mask & (1 << j) != 0 {
                m *= r;
            }
        }
        m
    }

    pub fn basis_label(&self, mask: usize) -> String {
        if mask == 0 {
            return "1".to_string();
        }
        let m = self.basis_radicand(mask);
        format!("sqrt({})", m)
    }

    /// e_i * e_j = factor * e_(i xor j); the factor collects the radicands
    /// the two masks share.
    fn basis_mul(&self, i: usize, j: usize) -> (usize, BigInt) {
        (i ^ j, self.basis_radicand(i & j))
    }
}

/// Element of an [`Algebra`], exact rational coordinates in the fixed basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraicElement {
    alg: Arc<Algebra>,
    coords: Vec<BigRational>,
}

impl std::hash::Hash for AlgebraicElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // coordinates determine the element within its algebra; elements of
        // different algebras may collide, equality still separates them
        self.coords.hash(state);
    }
}

impl AlgebraicElement {
    /// Precondition (panics otherwise): coords.len() == algebra dimension.
    pub fn new(alg: Arc<Algebra>, coords: Vec<BigRational>) -> AlgebraicElement {
        assert_eq!(coords.len(), alg.dim(), "coordinate/basis length mismatch");
        AlgebraicElement { alg, coords }
    }

    pub fn from_rational(alg: Arc<Algebra>, q: BigRational) -> AlgebraicElement {
        let mut coords = vec![BigRational::zero(); alg.dim()];
        coords[0] = q;
        AlgebraicElement { alg, coords }
    }

    /// The basis square root sqrt(radicand-product of `mask`).
    pub fn basis(alg: Arc<Algebra>, mask: usize) -> AlgebraicElement {
        let mut coords = vec![BigRational::zero(); alg.dim()];
        coords[mask] = BigRational::one();
        AlgebraicElement { alg, coords }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn assert_same(&self, other: &AlgebraicElement) {
        assert!(
            self.alg == other.alg,
            "elements of different algebras: {:?} vs {:?}",
            self.alg.radicands(),
            other.alg.radicands()
        );
    }

    pub fn add(&self, other: &AlgebraicElement) -> AlgebraicElement {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        AlgebraicElement {
            alg: self.alg.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &AlgebraicElement) -> AlgebraicElement {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        AlgebraicElement {
            alg: self.alg.clone(),
            coords,
        }
    }

    pub fn mul(&self, other: &AlgebraicElement) -> AlgebraicElement {
        self.assert_same(other);
        let dim = self.alg.dim();
        let mut out = vec![BigRational::zero(); dim];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (k, f) = self.alg.basis_mul(i, j);
                out[k] += a * b * BigRational::from_integer(f);
            }
        }
        AlgebraicElement {
            alg: self.alg.clone(),
            coords: out,
        }
    }

    pub fn scale(&self, q: &BigRational) -> AlgebraicElement {
        AlgebraicElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn neg(&self) -> AlgebraicElement {
        AlgebraicElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn square(&self) -> AlgebraicElement {
        self.mul(self)
    }

    /// Re-express in a larger algebra whose radicands include this one's.
    pub fn map_into(&self, target: &Arc<Algebra>) -> Result<AlgebraicElement, ExactError> {
        let mut out = vec![BigRational::zero(); target.dim()];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // find the target basis mask with the same radicand product
            let my_rad = self.alg.basis_radicand(i);
            let mut hit = None;
            for k in 0..target.dim() {
                if target.basis_radicand(k) == my_rad {
                    hit = Some(k);
                    break;
                }
            }
            match hit {
                Some(k) => out[k] += c,
                None => return Err(ExactError::AlgebraMismatch),
            }
        }
        Ok(AlgebraicElement {
            alg: target.clone(),
            coords: out,
        })
    }

    /// Evaluate a rational-coefficient polynomial at this element.
    pub fn eval_poly(&self, p: &RatPolynomial) -> AlgebraicElement {
        let mut acc = AlgebraicElement::from_rational(self.alg.clone(), BigRational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.coords[0] += c;
        }
        acc
    }

    /// Monic minimal polynomial over Q: the least k with x^k dependent on
    /// lower powers, found by exact Gaussian elimination on coordinates.
    pub fn min_poly(&self) -> RatPolynomial {
        let dim = self.alg.dim();
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 1);
        let mut pw = AlgebraicElement::from_rational(self.alg.clone(), BigRational::one());
        powers.push(pw.coords.clone());
        for _ in 0..dim {
            pw = pw.mul(self);
            powers.push(pw.coords.clone());
        }
        for k in 1..=dim {
            if let Some(lambda) = solve_linear(&powers[..k], &powers[k], dim) {
                // x^k = sum lambda_i x^i  =>  t^k - sum lambda_i t^i
                let mut coeffs: Vec<BigRational> = lambda.iter().map(|l| -l.clone()).collect();
                coeffs.push(BigRational::one());
                return RatPolynomial::new(coeffs);
            }
        }
        unreachable!("powers 0..dim always become dependent in dimension dim");
    }

    /// Algebraic integer test: the monic minimal polynomial has integer
    /// coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.min_poly().coeffs().iter().all(|c| c.is_integer())
    }

    /// Canonical display form "(u0+u1*sqrt(m1)+...)/v" over a common
    /// denominator, e.g. "(1+sqrt(5))/2". Rationals come out as plain
    /// fractions, zero as "0".
    pub fn surd_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let den = self
            .coords
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut terms = String::new();
        let mut nterms = 0usize;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let u = (c * BigRational::from_integer(den.clone())).to_integer();
            let neg = u.is_negative();
            let mag = u.abs();
            if nterms == 0 {
                if neg {
                    terms.push('-');
                }
            } else {
                terms.push(if neg { '-' } else { '+' });
            }
            if i == 0 {
                terms.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    terms.push_str(&mag.to_string());
                    terms.push('*');
                }
                terms.push_str(&format!("sqrt({})", self.alg.basis_radicand(i)));
            }
            nterms += 1;
        }
        if den.is_one() {
            terms
        } else if nterms == 1 {
            format!("{}/{}", terms, den)
        } else {
            format!("({})/{}", terms, den)
        }
    }
}

/// Solve sum_i x_i * cols[i] = target exactly (cols are length-`dim`
/// vectors). Returns None when inconsistent. Assumes cols are linearly
/// independent, which the min_poly loop guarantees by trying smaller k
/// first.
fn solve_linear(
    cols: &[Vec<BigRational>],
    target: &[BigRational],
    dim: usize,
) -> Option<Vec<BigRational>> {
    let k = cols.len();
    // augmented dim x (k+1) matrix
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r0 = 0;
    for col in 0..k {
        let piv = (r0..dim).find(|&r| !m[r][col].is_zero())?;
        m.swap(r0, piv);
        let inv = BigRational::one() / m[r0][col].clone();
        for c in col..=k {
            m[r0][c] = &m[r0][c] * &inv;
        }
        for r in 0..dim {
            if r != r0 && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=k {
                    let sub = &f * &m[r0][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_rows.push(r0);
        r0 += 1;
    }
    // consistency: rows beyond the pivots must have zero RHS
    for r in r0..dim {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    Some((0..k).map(|i| m[pivot_rows[i]][k].clone()).collect())
}
