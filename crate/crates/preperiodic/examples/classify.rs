//! Where the preperiodic points of x^2 + c land on the empty / finite /
//! infinite trichotomy, over the reals and over Q_p.
//!
//!     cargo run --example classify

use num_rational::BigRational;
use preperiodic::exact::parse_rational;
use preperiodic::padicdyn::{classify_totally_padic, PAdicContext};
use preperiodic::realdyn::{classify_totally_real, TrichotomyTag};

fn tag_name(tag: TrichotomyTag) -> &'static str {
    match tag {
        TrichotomyTag::Empty => "empty",
        TrichotomyTag::NonemptyFinite => "finite, nonempty",
        TrichotomyTag::FiniteUnknownNonempty => "finite",
        TrichotomyTag::Infinite => "infinite",
    }
}

fn main() {
    // Real side: the sign of c - 1/4 and of c + 2 decide everything.
    println!("totally real preperiodic points of x^2 + c:");
    println!("  {:>7}  {:<17} {}", "c", "verdict", "radius a_c");
    for cs in ["1", "26/100", "1/4", "1/5", "0", "-1", "-2", "-9/4"] {
        let c: BigRational = parse_rational(cs).unwrap();
        let tri = classify_totally_real(&c);
        let radius = match &tri.radius {
            Some(r) => r.surd_string(),
            None => "-".to_string(),
        };
        println!("  {:>7}  {:<17} {}", cs, tag_name(tri.tag), radius);
    }

    // p-adic side: |c|_p <= 1 always gives a finite set; past that the
    // answer swings on whether -c is a square in Q_p.
    println!();
    println!("totally p-adic preperiodic points:");
    for (cs, p) in [("-1", 3u64), ("1/5", 5), ("-4/25", 5), ("2/7", 7), ("3", 5)] {
        let ctx = PAdicContext::new(p).unwrap();
        let c = parse_rational(cs).unwrap();
        let tri = classify_totally_padic(&ctx, &c);
        let note = match (&tri.witness, tri.cantor_in_qp) {
            (Some(w), _) => format!("small cycle in Q_p: {:?}", w),
            (None, true) => "a Cantor set inside Q_p".to_string(),
            (None, false) => String::new(),
        };
        println!(
            "  c = {:>5}, p = {}: {:<17} {}",
            cs,
            p,
            tag_name(tri.tag),
            note
        );
    }
}
