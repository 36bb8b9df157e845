//! Fekete configurations on a real segment, and the maximal pairwise
//! products D_n on [-1/2, 1/2] against their known exact rational values.
//!
//!     cargo run --example fekete_table

use num_rational::BigRational;
use num_traits::ToPrimitive;
use preperiodic::capfek::{dn, fekete_points, FeketeConfig};
use preperiodic::exact::parse_rational;

fn main() {
    let cfg = FeketeConfig::default();

    // Small configurations on [-1, 1]: endpoints pinned, interior points
    // at the stationary points of the log product (zeros of Jacobi-type
    // polynomials; for n = 4 they are +-1/sqrt(5)).
    println!("Fekete points on [-1, 1]:");
    for n in 2..=5 {
        let r = fekete_points(n, 1.0, &cfg).unwrap();
        let pts: Vec<String> = r.points.iter().map(|x| format!("{:+.6}", x)).collect();
        println!(
            "  n = {}: [{}]   n-diameter {:.6}",
            n,
            pts.join(", "),
            r.n_diameter
        );
    }

    // D_n = max over n points in [-1/2, 1/2] of prod (x_i - x_j)^2.
    // These have exact rational values; the optimizer reproduces them to
    // ~1e-12 relative.
    let exact: [(usize, &str); 7] = [
        (2, "1"),
        (3, "1/16"),
        (4, "1/3125"),
        (5, "27/210827008"),
        (6, "1/259356749904"),
        (7, "3125/368036388053733408768"),
        (8, "3125/2333172671504650870750167741"),
    ];
    println!();
    println!("maximal pairwise products D_n on [-1/2, 1/2]:");
    println!("  {:>2}  {:>24}  {:>24}  {}", "n", "computed", "exact", "rel err");
    for (n, ex) in exact {
        let got = dn(n, &cfg).unwrap();
        let want: BigRational = parse_rational(ex).unwrap();
        let want = want.to_f64().unwrap();
        println!(
            "  {:>2}  {:>24.16e}  {:>24.16e}  {:.1e}",
            n,
            got,
            want,
            ((got - want) / want).abs()
        );
    }
}
