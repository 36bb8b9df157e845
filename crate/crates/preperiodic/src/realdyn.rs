//! The totally real trichotomy for x^2 + c.
//!
//! For rational c, real fixed points exist iff c <= 1/4, and the larger
//! one, a_c = (1 + sqrt(1 - 4c))/2, bounds every real preperiodic point
//! in absolute value. The segment [-a_c, a_c] has transfinite diameter
//! a_c / 2, and the size of the set of *totally real* preperiodic points
//! (all conjugates real) follows that capacity:
//!
//! * c >  1/4 — no real preperiodic points at all: empty;
//! * -2 < c <= 1/4 — capacity below one: finite, and nonempty because
//!   a_c itself is a totally real fixed point;
//! * c <= -2 — capacity at least one and the Julia set is real, so every
//!   preperiodic point is totally real: infinite.
//!
//! All comparisons here are exact; a_c lives in Q or a real quadratic
//! field depending on whether 1 - 4c is a rational square.

use crate::exact::algebra::{Algebra, AlgebraicElement};
use crate::exact::embed::cmp_embeddings;
use crate::exact::squarefree_split;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// How big a set of locally rational preperiodic points is. The
/// `FiniteUnknownNonempty` variant marks the finite regimes where no
/// general construction of even one point is available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrichotomyTag {
    Empty,
    NonemptyFinite,
    FiniteUnknownNonempty,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EscapeOutcome {
    Inside,
    OnBoundary,
    Escapes,
}

#[derive(Clone, Debug)]
pub struct RealTrichotomy {
    pub tag: TrichotomyTag,
    /// The larger real fixed point a_c; present iff c <= 1/4.
    pub radius: Option<AlgebraicElement>,
    /// Transfinite diameter of [-a_c, a_c], exactly a_c / 2.
    pub capacity: Option<AlgebraicElement>,
    /// A totally real preperiodic point certifying nonemptiness.
    pub witness: Option<AlgebraicElement>,
}

/// The larger real fixed point a_c = (1 + sqrt(1 - 4c))/2, or None when
/// c > 1/4 and the fixed points are complex.
pub fn fixed_point_radius(c: &BigRational) -> Option<AlgebraicElement> {
    let q = BigRational::one() - c * BigRational::from_integer(BigInt::from(4));
    if q.is_negative() {
        return None;
    }
    // sqrt(num/den) = (k/den) sqrt(m) with num*den = k^2 m, m squarefree
    let (k, m) = squarefree_split(&(q.numer() * q.denom()));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if m.is_zero() {
        return Some(AlgebraicElement::from_rational(Algebra::rationals(), half));
    }
    if m.is_one() {
        let root = BigRational::new(k, q.denom().clone());
        let a = (BigRational::one() + root) * half;
        return Some(AlgebraicElement::from_rational(Algebra::rationals(), a));
    }
    let alg = Algebra::quadratic(&m).expect("squarefree by construction");
    let coef = BigRational::new(k, BigInt::from(2) * q.denom());
    Some(AlgebraicElement::new(alg, vec![half, coef]))
}

/// Classify the set of totally real preperiodic points of x^2 + c.
pub fn classify_totally_real(c: &BigRational) -> RealTrichotomy {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if c > &quarter {
        return RealTrichotomy {
            tag: TrichotomyTag::Empty,
            radius: None,
            capacity: None,
            witness: None,
        };
    }
    let radius = fixed_point_radius(c).expect("real fixed point exists for c <= 1/4");
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let capacity = radius.scale(&half);
    let minus_two = BigRational::from_integer(BigInt::from(-2));
    let tag = if c <= &minus_two {
        TrichotomyTag::Infinite
    } else {
        TrichotomyTag::NonemptyFinite
    };
    RealTrichotomy {
        tag,
        radius: Some(radius.clone()),
        capacity: Some(capacity),
        witness: Some(radius),
    }
}

/// Compare every real conjugate of `x` against the symmetric interval
/// [-t, t], where `t` is taken through its all-positive embedding.
/// `Escapes` as soon as one conjugate leaves the interval; `OnBoundary`
/// when none leaves but some conjugate sits exactly at an endpoint.
pub fn escape_test_against(x: &AlgebraicElement, t: &AlgebraicElement) -> EscapeOutcome {
    let neg_t = t.neg();
    let mut on_boundary = false;
    for e in 0..x.algebra().dim() {
        match cmp_embeddings(x, e, t, 0) {
            Ordering::Greater => return EscapeOutcome::Escapes,
            Ordering::Equal => on_boundary = true,
            Ordering::Less => {}
        }
        match cmp_embeddings(x, e, &neg_t, 0) {
            Ordering::Less => return EscapeOutcome::Escapes,
            Ordering::Equal => on_boundary = true,
            Ordering::Greater => {}
        }
    }
    if on_boundary {
        EscapeOutcome::OnBoundary
    } else {
        EscapeOutcome::Inside
    }
}

/// Escape test against the preperiodicity radius a_c. A conjugate outside
/// [-a_c, a_c] iterates to infinity, so `x` cannot be preperiodic and
/// totally real. When c > 1/4 there is no real invariant interval and
/// every real point escapes.
pub fn escape_test(x: &AlgebraicElement, c: &BigRational) -> EscapeOutcome {
    match fixed_point_radius(c) {
        Some(a) => escape_test_against(x, &a),
        None => EscapeOutcome::Escapes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::embed::embedding_f64;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn elem_q(q: BigRational) -> AlgebraicElement {
        AlgebraicElement::from_rational(Algebra::rationals(), q)
    }

    #[test]
    fn radius_exact_values() {
        // c = -1: golden ratio
        let a = fixed_point_radius(&rat(-1, 1)).unwrap();
        assert_eq!(a.algebra().radicands(), &[BigInt::from(5)]);
        assert_eq!(a.coords(), &[rat(1, 2), rat(1, 2)]);
        // c = -2: rational, a = 2
        let a = fixed_point_radius(&rat(-2, 1)).unwrap();
        assert_eq!(a.as_rational(), Some(&rat(2, 1)));
        // c = 0: a = 1
        let a = fixed_point_radius(&rat(0, 1)).unwrap();
        assert_eq!(a.as_rational(), Some(&rat(1, 1)));
        // c = 1/4: double fixed point at 1/2
        let a = fixed_point_radius(&rat(1, 4)).unwrap();
        assert_eq!(a.as_rational(), Some(&rat(1, 2)));
        // c = 1/5: (1 + sqrt(5)/5)/2 = 1/2 + sqrt(5)/10
        let a = fixed_point_radius(&rat(1, 5)).unwrap();
        assert_eq!(a.coords(), &[rat(1, 2), rat(1, 10)]);
        // c just above 1/4: complex
        assert!(fixed_point_radius(&rat(26, 100)).is_none());
    }

    #[test]
    fn radius_matches_float_formula() {
        for (n, d) in [(-7, 3), (-2, 1), (0, 1), (1, 4), (-1, 2), (-13, 6)] {
            let c = rat(n, d);
            let a = fixed_point_radius(&c).unwrap();
            let cf = n as f64 / d as f64;
            let expect = (1.0 + (1.0 - 4.0 * cf).sqrt()) / 2.0;
            assert!((embedding_f64(&a, 0) - expect).abs() < 1e-12, "c = {}/{}", n, d);
        }
    }

    #[test]
    fn trichotomy_boundaries() {
        assert_eq!(classify_totally_real(&rat(26, 100)).tag, TrichotomyTag::Empty);
        assert_eq!(classify_totally_real(&rat(1, 4)).tag, TrichotomyTag::NonemptyFinite);
        assert_eq!(classify_totally_real(&rat(0, 1)).tag, TrichotomyTag::NonemptyFinite);
        assert_eq!(classify_totally_real(&rat(-199, 100)).tag, TrichotomyTag::NonemptyFinite);
        assert_eq!(classify_totally_real(&rat(-2, 1)).tag, TrichotomyTag::Infinite);
        assert_eq!(classify_totally_real(&rat(-201, 100)).tag, TrichotomyTag::Infinite);
    }

    #[test]
    fn report_fields() {
        let r = classify_totally_real(&rat(-1, 1));
        let phi = fixed_point_radius(&rat(-1, 1)).unwrap();
        assert_eq!(r.radius.as_ref(), Some(&phi));
        assert_eq!(r.witness.as_ref(), Some(&phi));
        // capacity phi/2 = 1/4 + sqrt(5)/4
        assert_eq!(r.capacity.unwrap().coords(), &[rat(1, 4), rat(1, 4)]);

        let empty = classify_totally_real(&rat(1, 2));
        assert!(empty.radius.is_none() && empty.capacity.is_none() && empty.witness.is_none());

        // c = 0: radius 1, capacity 1/2
        let r0 = classify_totally_real(&rat(0, 1));
        assert_eq!(r0.capacity.unwrap().as_rational(), Some(&rat(1, 2)));
    }

    #[test]
    fn escape_against_golden_radius() {
        let c = rat(-1, 1);
        assert_eq!(escape_test(&elem_q(rat(2, 1)), &c), EscapeOutcome::Escapes);
        assert_eq!(escape_test(&elem_q(rat(1, 1)), &c), EscapeOutcome::Inside);
        assert_eq!(escape_test(&elem_q(rat(3, 2)), &c), EscapeOutcome::Inside);
        let phi = fixed_point_radius(&c).unwrap();
        assert_eq!(escape_test(&phi, &c), EscapeOutcome::OnBoundary);
        assert_eq!(escape_test(&phi.neg(), &c), EscapeOutcome::OnBoundary);
        // (1 - sqrt5)/2 is -0.618... but shares phi's conjugate set, so one
        // embedding sits exactly on the boundary
        let conj = AlgebraicElement::new(phi.algebra().clone(), vec![rat(1, 2), rat(-1, 2)]);
        assert_eq!(escape_test(&conj, &c), EscapeOutcome::OnBoundary);
        // a genuinely interior surd: sqrt(5)/2 = 1.118... < phi both ways
        let half_s5 = AlgebraicElement::new(phi.algebra().clone(), vec![rat(0, 1), rat(1, 2)]);
        assert_eq!(escape_test(&half_s5, &c), EscapeOutcome::Inside);
        // sqrt(5) = 2.236... > phi under both embeddings
        let s5 = AlgebraicElement::basis(phi.algebra().clone(), 1);
        assert_eq!(escape_test(&s5, &c), EscapeOutcome::Escapes);
    }

    #[test]
    fn escape_when_no_real_interval() {
        assert_eq!(escape_test(&elem_q(rat(0, 1)), &rat(1, 2)), EscapeOutcome::Escapes);
    }

    #[test]
    fn escape_against_explicit_threshold() {
        // threshold 3/2 in Q, x = sqrt(2): 1.414 < 1.5 under both signs
        let t = elem_q(rat(3, 2));
        let s2 = AlgebraicElement::basis(Algebra::quadratic(&BigInt::from(2)).unwrap(), 1);
        assert_eq!(escape_test_against(&s2, &t), EscapeOutcome::Inside);
        let t = elem_q(rat(7, 5));
        assert_eq!(escape_test_against(&s2, &t), EscapeOutcome::Escapes);
    }

    proptest! {
        // a_c really is a fixed point: a^2 + c = a, exactly
        #[test]
        fn radius_satisfies_fixed_point_equation(num in -2000i64..500, den in 1i64..60) {
            let c = BigRational::new(BigInt::from(num), BigInt::from(den));
            prop_assume!(c <= BigRational::new(BigInt::one(), BigInt::from(4)));
            let a = fixed_point_radius(&c).unwrap();
            let c_elem = AlgebraicElement::from_rational(a.algebra().clone(), c);
            prop_assert_eq!(a.square().add(&c_elem), a);
        }

        // the radius never escapes its own interval, and scaling past it does
        #[test]
        fn radius_sits_on_boundary(num in -800i64..200, den in 1i64..40) {
            let c = BigRational::new(BigInt::from(num), BigInt::from(den));
            prop_assume!(c <= BigRational::new(BigInt::one(), BigInt::from(4)));
            let a = fixed_point_radius(&c).unwrap();
            prop_assert_eq!(escape_test(&a, &c), EscapeOutcome::OnBoundary);
            let outside = a.scale(&BigRational::new(BigInt::from(9), BigInt::from(8)));
            prop_assert_eq!(escape_test(&outside, &c), EscapeOutcome::Escapes);
        }
    }
}
