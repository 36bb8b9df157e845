//! Complete lists of totally real preperiodic points, computed exactly,
//! for the parameters where the degree-bound pipeline closes — and one
//! honest refusal where the bound is 97.
//!
//!     cargo run --example explicit_sets

use preperiodic::exact::parse_rational;
use preperiodic::exact::poly::IntPolynomial;
use preperiodic::preper::{totally_real_preper_set, PreperError, PreperOptions};

fn poly_str(p: &IntPolynomial) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        use num_traits::{Signed, Zero};
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            out.push('-');
        }
        let a = c.abs();
        use num_traits::One;
        match k {
            0 => out.push_str(&a.to_string()),
            _ => {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                }
                out.push('t');
                if k > 1 {
                    out.push_str(&format!("^{}", k));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn main() {
    let opts = PreperOptions::default();
    for cs in ["0", "1/4", "-1", "1/5"] {
        let c = parse_rational(cs).unwrap();
        let set = totally_real_preper_set(&c, &opts).unwrap();
        println!(
            "c = {:>4}: degree bound {}, {} candidate polynomials, {} points",
            cs,
            set.max_degree,
            set.candidates,
            set.elements.len()
        );
        for e in &set.elements {
            println!(
                "    {:<16} tail {} period {}   root of {}",
                e.value.surd_string(),
                e.tail,
                e.period,
                poly_str(&e.min_poly)
            );
        }
        println!();
    }

    // c = -1/2: the segment half-length is (sqrt(2) + sqrt(6))/2 ~ 1.93,
    // close enough to 2 that the criterion only fires at n0 = 98. The
    // pipeline reports the bound instead of enumerating 10^40-ish
    // coefficient vectors.
    let c = parse_rational("-1/2").unwrap();
    match totally_real_preper_set(&c, &opts) {
        Err(PreperError::BoundTooLarge { bound }) => println!(
            "c = -1/2: enumeration refused; any point would have degree <= {}",
            bound
        ),
        other => println!("c = -1/2: unexpected outcome {:?}", other.map(|s| s.elements.len())),
    }
}
