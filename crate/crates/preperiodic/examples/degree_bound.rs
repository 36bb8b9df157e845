//! The transfinite-diameter degree bound: compare a_n = (2s)^(n(n-1)) D_n
//! with the discriminant floor b_n = n^(2n)/(n!)^2; once a_n < b_n with
//! the ratios also ordered, no algebraic integer of degree >= n_0 can
//! keep all its conjugates in [-s, s].
//!
//!     cargo run --example degree_bound

use preperiodic::capfek::{degree_bound, CapfekError, FeketeConfig};
use preperiodic::exact::parse_rational;
use preperiodic::preper::ConjugatedModel;

fn main() {
    let cfg = FeketeConfig::default();

    // c = -1: segment half-length s = (1+sqrt(5))/2.
    let c = parse_rational("-1").unwrap();
    let model = ConjugatedModel::new(&c).unwrap();
    println!(
        "c = -1, s = {} ~ {:.6}",
        model.s.surd_string(),
        preperiodic::exact::embed::embedding_f64(&model.s, 0)
    );
    let db = degree_bound(&model.s, 128, &cfg).unwrap();
    println!("  {:>2}  {:>16}  {:>16}", "n", "a_n", "b_n");
    for row in &db.trace.rows {
        let mark = if Some(row.n) == db.trace.n0 { "  <- criterion fires" } else { "" };
        println!("  {:>2}  {:>16.6}  {:>16.6}{}", row.n, row.a, row.b, mark);
    }
    println!(
        "  n0 = {}: totally real preperiodic points have degree at most {}",
        db.n0,
        db.n0 - 1
    );

    // c = 1/4: s = 1, and the bound collapses to degree 2 immediately.
    let c = parse_rational("1/4").unwrap();
    let model = ConjugatedModel::new(&c).unwrap();
    let db = degree_bound(&model.s, 128, &cfg).unwrap();
    println!();
    println!("c = 1/4, s = 1: n0 = {}, degree <= {}", db.n0, db.n0 - 1);

    // c = -1/2: s = (sqrt(2)+sqrt(6))/2 ~ 1.93 is still below 2, but so
    // barely that the criterion waits until n0 = 98.
    let c = parse_rational("-1/2").unwrap();
    let model = ConjugatedModel::new(&c).unwrap();
    let db = degree_bound(&model.s, 128, &cfg).unwrap();
    println!(
        "c = -1/2, s ~ {:.6}: n0 = {}, degree <= {} (enumeration hopeless)",
        preperiodic::exact::embed::embedding_f64(&model.s, 0),
        db.n0,
        db.n0 - 1
    );

    // s = 2 exactly: capacity s/2 = 1, the Fekete argument says nothing,
    // and the comparison is refused rather than fudged.
    let s = parse_rational("2").unwrap();
    let alg = preperiodic::exact::algebra::Algebra::rationals();
    let s = preperiodic::exact::algebra::AlgebraicElement::from_rational(alg, s);
    match degree_bound(&s, 128, &cfg) {
        Err(CapfekError::CapacityNotSubcritical) => {
            println!("s = 2: capacity not subcritical, no bound exists")
        }
        other => println!("s = 2: unexpected {:?}", other.map(|r| r.n0)),
    }
}
