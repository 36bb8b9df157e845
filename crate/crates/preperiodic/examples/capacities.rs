//! The capacities that drive every finiteness statement here: a quarter
//! of the invariant segment's length at the real place, p^(-1/(p-1)) for
//! Z_p, and adelic products of the two.
//!
//!     cargo run --example capacities

use preperiodic::capfek::{
    adelic_capacity_totally_real, adelic_descriptor_totally_padic, zp_capacity,
};
use preperiodic::exact::parse_rational;
use preperiodic::padicdyn::PAdicContext;
use std::cmp::Ordering;

fn main() {
    // Totally real question: the adelic set is [-a_c, a_c] at the real
    // place and a capacity-1 filled Julia set everywhere else, so the
    // product is a_c/2 on the nose.
    println!("capacity of the totally real adelic set (= a_c/2):");
    for cs in ["1/4", "0", "-1", "-2", "-21/10"] {
        let c = parse_rational(cs).unwrap();
        let cap = adelic_capacity_totally_real(&c).unwrap();
        let verdict = match cap.cmp_one() {
            Ordering::Less => "< 1, forces finiteness",
            Ordering::Equal => "= 1, critical",
            Ordering::Greater => "> 1, no finiteness this way",
        };
        println!(
            "  c = {:>6}: {:<14} ~ {:<22} {}",
            cs,
            cap.exact_form().unwrap(),
            cap.render(20),
            verdict
        );
    }

    println!();
    println!("capacity of Z_p inside C_p:");
    for p in [3u64, 5, 7, 11] {
        let cap = zp_capacity(p);
        println!(
            "  p = {:>2}: {:<9} ~ {}",
            p,
            cap.exact_form().unwrap(),
            cap.render(30)
        );
    }

    // Totally p-adic question for |c|_p <= 1: Z_p at p, everything else
    // capacity 1; the product is already subcritical.
    println!();
    let ctx = PAdicContext::new(3).unwrap();
    let c = parse_rational("-1").unwrap();
    let d = adelic_descriptor_totally_padic(&c, &ctx).unwrap();
    let total = d.capacity();
    println!(
        "adelic set for (c, p) = (-1, 3): archimedean factor {}, factor at 3 = {}, product {} ~ {}",
        d.archimedean_factor.render(6),
        d.finite_factors[&3].exact_form().unwrap(),
        total.exact_form().unwrap(),
        total.render(30)
    );
}
