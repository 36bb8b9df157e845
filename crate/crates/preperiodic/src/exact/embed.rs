//! Real embeddings of algebra elements as shrinking rational intervals,
//! exact sign determination, and exact comparison of embedded values —
//! including across different algebras, via minimal-polynomial matching
//! with Sturm isolation when refinement alone cannot separate.

use super::algebra::AlgebraicElement;
use super::poly::{sturm_count, RatPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn point(q: BigRational) -> Self {
        RationalInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn mid_f64(&self) -> f64 {
        let two = BigRational::from_integer(BigInt::from(2));
        ((&self.lo + &self.hi) / two).to_f64().unwrap_or(f64::NAN)
    }
}

/// [floor(sqrt(m) 10^s), same + 1] / 10^s — a width-10^(-s) enclosure of
/// sqrt(m) for integer m >= 0.
fn sqrt_enclosure(m: &BigInt, scale: u32) -> RationalInterval {
    let p = BigInt::from(10u32).pow(scale);
    let f = (m * &p * &p).sqrt();
    RationalInterval {
        lo: BigRational::new(f.clone(), p.clone()),
        hi: BigRational::new(f + BigInt::one(), p),
    }
}

/// Enclosure of the image of `x` under embedding `emb` (bit j of `emb`
/// flips the sign of the j-th radicand) with width below 10^(-scale) times
/// the coordinate mass.
pub fn enclosure(x: &AlgebraicElement, emb: usize, scale: u32) -> RationalInterval {
    let alg = x.algebra();
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for (i, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign_neg = ((emb & i).count_ones() % 2) == 1;
        if i == 0 {
            lo += c;
            hi += c;
            continue;
        }
        let m = alg.basis_radicand(i);
        let root = sqrt_enclosure(&m, scale);
        let (a, b) = (c * &root.lo, c * &root.hi);
        let (mut tl, mut th) = if c.is_positive() { (a, b) } else { (b, a) };
        if sign_neg {
            std::mem::swap(&mut tl, &mut th);
            tl = -tl;
            th = -th;
        }
        lo += tl;
        hi += th;
    }
    RationalInterval { lo, hi }
}

/// All real embeddings of `x`, each an interval of width at most `eps`.
/// Ordering is by sign pattern: embedding 0 keeps every radicand positive,
/// bit j of the index negates the j-th radicand.
pub fn real_embeddings(x: &AlgebraicElement, eps: &BigRational) -> Vec<RationalInterval> {
    assert!(eps.is_positive(), "eps must be positive");
    let dim = x.algebra().dim();
    (0..dim)
        .map(|emb| {
            let mut scale = 8u32;
            loop {
                let iv = enclosure(x, emb, scale);
                if &iv.width() <= eps {
                    return iv;
                }
                scale *= 2;
            }
        })
        .collect()
}

/// Exact sign of the embedded value. Terminates because the algebras are
/// fields: a nonzero element has nonzero image under every embedding.
pub fn sign_at(x: &AlgebraicElement, emb: usize) -> Ordering {
    if x.is_zero() {
        return Ordering::Equal;
    }
    let mut scale = 8u32;
    loop {
        let iv = enclosure(x, emb, scale);
        if iv.strictly_positive() {
            return Ordering::Greater;
        }
        if iv.strictly_negative() {
            return Ordering::Less;
        }
        scale *= 2;
    }
}

/// f64 approximation of the embedded value (about 1e-16 relative).
pub fn embedding_f64(x: &AlgebraicElement, emb: usize) -> f64 {
    enclosure(x, emb, 25).mid_f64()
}

/// Exact comparison of two embedded real algebraic values, allowed to live
/// in different algebras. Refinement separates distinct values; suspected
/// ties are settled by comparing minimal polynomials and isolating a
/// single shared root with a Sturm count over the interval hull.
pub fn cmp_embeddings(
    x: &AlgebraicElement,
    ex: usize,
    y: &AlgebraicElement,
    ey: usize,
) -> Ordering {
    if let (Some(a), Some(b)) = (x.as_rational(), y.as_rational()) {
        return a.cmp(b);
    }
    let mut mp: Option<(RatPolynomial, RatPolynomial)> = None;
    let mut scale = 8u32;
    loop {
        let ix = enclosure(x, ex, scale);
        let iy = enclosure(y, ey, scale);
        if ix.hi < iy.lo {
            return Ordering::Less;
        }
        if iy.hi < ix.lo {
            return Ordering::Greater;
        }
        // overlapping: maybe equal
        let (mpx, mpy) =
            mp.get_or_insert_with(|| (x.min_poly(), y.min_poly()));
        if mpx == mpy {
            // same minimal polynomial: equal iff the hull isolates one root.
            // The polynomial is irreducible of degree >= 2 here (the
            // rational case returned above), so the rational hull endpoints
            // are never roots and the half-open Sturm count is the closed
            // count.
            let hull_lo = if ix.lo < iy.lo { &ix.lo } else { &iy.lo };
            let hull_hi = if ix.hi > iy.hi { &ix.hi } else { &iy.hi };
            let p = mpx.primitive_integer();
            if sturm_count(&p, hull_lo, hull_hi) == 1 {
                return Ordering::Equal;
            }
        }
        scale *= 2;
    }
}

/// Sign variations of a Sturm chain evaluated at the embedded value of `x`
/// (zeros dropped, same half-open convention as the rational version).
pub fn sign_variations_at_element(
    chain: &[RatPolynomial],
    x: &AlgebraicElement,
    emb: usize,
) -> usize {
    let signs: Vec<Ordering> = chain
        .iter()
        .map(|q| sign_at(&x.eval_poly(q), emb))
        .collect();
    super::poly::count_variations(&signs)
}
