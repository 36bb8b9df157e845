//! A tour of the exact substrate: multiquadratic algebras, minimal
//! polynomials, algebraic-integer tests, Sturm root counting, and
//! arbitrary-precision decimal rendering.
//!
//!     cargo run --example exact_algebra

use num_rational::BigRational;
use preperiodic::exact::algebra::{Algebra, AlgebraicElement};
use preperiodic::exact::embed::{embedding_f64, real_embeddings};
use preperiodic::exact::fixed::Fixed;
use preperiodic::exact::parse_rational;
use preperiodic::exact::poly::{sturm_count, IntPolynomial};

fn main() {
    // Q(sqrt(2), sqrt(3)): basis 1, sqrt(2), sqrt(3), sqrt(6). Products
    // fold radicands exactly; sqrt(2)*sqrt(3) lands on the sqrt(6)
    // coordinate.
    let alg = Algebra::make(&[2.into(), 3.into()]).unwrap();
    let r2 = AlgebraicElement::basis(alg.clone(), 0b01);
    let r3 = AlgebraicElement::basis(alg.clone(), 0b10);
    let x = r2.add(&r3);
    println!("x = {}", x.surd_string());
    println!("x * x = {}", x.square().surd_string());
    println!("sqrt(2) * sqrt(3) = {}", r2.mul(&r3).surd_string());

    // The minimal polynomial comes from the kernel of multiplication by
    // x on the 4-dimensional algebra; for sqrt(2)+sqrt(3) it is the
    // classic t^4 - 10t^2 + 1, so x is an algebraic integer.
    let mp = x.min_poly().primitive_integer();
    let cs: Vec<String> = mp.coeffs().iter().map(|c| c.to_string()).collect();
    println!("min poly coefficients (low to high): [{}]", cs.join(", "));
    println!("algebraic integer: {}", x.is_algebraic_integer());

    // All four real embeddings, isolated exactly, then approximated.
    let eps = parse_rational("1/1000000").unwrap();
    let vals: Vec<String> = real_embeddings(&x, &eps)
        .iter()
        .map(|iv| format!("{:+.6}", iv.mid_f64()))
        .collect();
    println!("embeddings: [{}]", vals.join(", "));
    println!("embedding 0 as f64: {}", embedding_f64(&x, 0));

    // Sturm counting on integer polynomials: (t^2-2)(t^2-3) has all four
    // roots in [-2, 2], two of them in [0, 2].
    let p = IntPolynomial::from_i64s(&[6, 0, -5, 0, 1]);
    let m2 = parse_rational("-2").unwrap();
    let p2 = parse_rational("2").unwrap();
    let z = parse_rational("0").unwrap();
    println!(
        "roots of t^4 - 5t^2 + 6 in [-2, 2]: {}; in [0, 2]: {}",
        sturm_count(&p, &m2, &p2),
        sturm_count(&p, &z, &p2)
    );

    // Decimal rendering is exact to the requested precision: 40
    // significant digits of sqrt(2) and of the golden ratio.
    let two = BigRational::from_integer(2.into());
    println!("sqrt(2)  = {}", Fixed::sqrt_rational(&two, 52).render_sig(40));
    let five = BigRational::from_integer(5.into());
    let phi = Fixed::sqrt_rational(&five, 52)
        .add(&Fixed::from_rational(&parse_rational("1").unwrap(), 52))
        .mul_rational(&parse_rational("1/2").unwrap());
    println!("golden   = {}", phi.render_sig(40));
}
