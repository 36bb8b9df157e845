//! Exact orbit classification in the integral model, and the independent
//! verifier that re-checks membership by iterating x^2 + c directly.
//!
//!     cargo run --example orbits

use num_rational::BigRational;
use preperiodic::exact::algebra::{Algebra, AlgebraicElement};
use preperiodic::exact::parse_rational;
use preperiodic::preper::{orbit_classify, verify_preperiodic, ConjugatedModel, OrbitOutcome};

fn show(outcome: &OrbitOutcome) -> String {
    match outcome {
        OrbitOutcome::Preperiodic { tail, period } => {
            format!("preperiodic, tail {} period {}", tail, period)
        }
        OrbitOutcome::Rejected { reason, step } => {
            format!("rejected ({:?} at step {})", reason, step)
        }
        OrbitOutcome::Unresolved { steps_used } => {
            format!("unresolved after {} steps", steps_used)
        }
    }
}

fn main() {
    // c = -1 is already integral (b = 1), so g = f and orbits can be
    // followed by hand: 0 -> -1 -> 0, and sqrt(2) -> 1 -> 0 -> -1 -> 0.
    let c = parse_rational("-1").unwrap();
    let model = ConjugatedModel::new(&c).unwrap();
    let q2 = Algebra::quadratic(&2.into()).unwrap();
    let q5 = Algebra::quadratic(&5.into()).unwrap();
    let zero = AlgebraicElement::from_rational(Algebra::rationals(), BigRational::from_integer(0.into()));
    let sqrt2 = AlgebraicElement::basis(q2, 1);
    let phi = AlgebraicElement::new(
        q5,
        vec![parse_rational("1/2").unwrap(), parse_rational("1/2").unwrap()],
    );
    println!("orbits under g(y) = y^2 - 1 (the c = -1 model):");
    for (name, y) in [("0", &zero), ("sqrt(2)", &sqrt2), ("(1+sqrt(5))/2", &phi)] {
        println!("  {:<14} {}", name, show(&orbit_classify(y, &model, 64)));
    }

    // c = 1/4 conjugates to g(y) = (y^2 + 1)/2 on [-1, 1]. The point 0
    // is inside the segment but g(0) = 1/2 is not an algebraic integer,
    // which is exactly why 0 is not preperiodic for c = 1/4.
    let c = parse_rational("1/4").unwrap();
    let model = ConjugatedModel::new(&c).unwrap();
    println!();
    println!("orbits under g(y) = (y^2 + 1)/2 (the c = 1/4 model):");
    for (name, y) in [
        ("0", &zero),
        ("1", &AlgebraicElement::from_rational(Algebra::rationals(), BigRational::from_integer(1.into()))),
    ] {
        println!("  {:<14} {}", name, show(&orbit_classify(y, &model, 64)));
    }

    // The verifier iterates f_c itself in the point's own field, with no
    // reference to the enumeration that produced the point.
    println!();
    println!("independent verification against f_c:");
    let cases = [
        ("(1+sqrt(5))/2", phi.clone(), "-1"),
        ("1/2", AlgebraicElement::from_rational(Algebra::rationals(), parse_rational("1/2").unwrap()), "1/4"),
        ("1/3", AlgebraicElement::from_rational(Algebra::rationals(), parse_rational("1/3").unwrap()), "0"),
        ("2", AlgebraicElement::from_rational(Algebra::rationals(), parse_rational("2").unwrap()), "-1"),
    ];
    for (name, x, cs) in cases {
        let c = parse_rational(cs).unwrap();
        let out = verify_preperiodic(&x, &c, 128).unwrap();
        println!("  x = {:<14} c = {:>4}: {}", name, cs, show(&out));
    }
}
