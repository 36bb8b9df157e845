//! Capacities and Fekete machinery.
//!
//! The exact side: segment capacities (one quarter of the length), the
//! capacity of Z_p inside C_p (p^(-1/(p-1))), and adelic products over the
//! places of Q. Capacity values keep an exact form — rational, quadratic
//! surd, or a (prime, exponent) pair — whenever one exists; comparisons
//! against the critical value 1 always use the exact form.
//!
//! The numeric side: n-point Fekete configurations on a real segment by
//! coordinate-wise ascent (endpoints pinned, interior points solved by
//! safeguarded Newton on the stationarity condition), the squared
//! pairwise-product maxima D_n on [-1/2, 1/2], and the a_n/b_n criterion
//! trace that turns a subcritical capacity into an explicit degree bound
//! for algebraic integers with all conjugates in [-s, s].
//!
//! D_n is produced by the optimizer and validated against exact table
//! values in the tests, not computed by any closed-form recursion. The
//! a_n values span many orders of magnitude, so all criterion comparisons
//! happen in the log domain with a small tie guard (a_2 = b_2 exactly
//! when 2s = 2).

use crate::exact::algebra::AlgebraicElement;
use crate::exact::embed::{embedding_f64, sign_at};
use crate::exact::fixed::Fixed;
use crate::exact::nt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A capacity (transfinite diameter) with its best available exact form.
#[derive(Clone, Debug, PartialEq)]
pub enum CapacityValue {
    Rational(BigRational),
    Surd(AlgebraicElement),
    /// p^(-1/(p-1)), the capacity of Z_p inside C_p.
    PrimeRootRecip { p: u64 },
    /// Fallback when a product has no exact form in the above shapes.
    Approx(f64),
}

impl CapacityValue {
    pub fn approx_f64(&self) -> f64 {
        match self {
            CapacityValue::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            CapacityValue::Surd(x) => embedding_f64(x, 0),
            CapacityValue::PrimeRootRecip { p } => {
                (-(*p as f64).ln() / (*p as f64 - 1.0)).exp()
            }
            CapacityValue::Approx(v) => *v,
        }
    }

    /// Symbolic form, when there is one: "1/2", "(1+sqrt(5))/4", "5^(-1/4)".
    pub fn exact_form(&self) -> Option<String> {
        match self {
            CapacityValue::Rational(q) => Some(q.to_string()),
            CapacityValue::Surd(x) => Some(x.surd_string()),
            CapacityValue::PrimeRootRecip { p } => Some(format!("{}^(-1/{})", p, p - 1)),
            CapacityValue::Approx(_) => None,
        }
    }

    /// Decimal rendering with `sig` significant digits, exact-arithmetic
    /// digits for the exact forms.
    pub fn render(&self, sig: usize) -> String {
        let work = sig as u32 + 12;
        match self {
            CapacityValue::Rational(q) => Fixed::from_rational(q, work).render_sig(sig),
            CapacityValue::Surd(x) => {
                let mut acc = Fixed::from_rational(&x.coords()[0], work);
                for (i, c) in x.coords().iter().enumerate().skip(1) {
                    if c.is_zero() {
                        continue;
                    }
                    let rad = BigRational::from_integer(x.algebra().basis_radicand(i));
                    acc = acc.add(&Fixed::sqrt_rational(&rad, work).mul_rational(c));
                }
                acc.render_sig(sig)
            }
            CapacityValue::PrimeRootRecip { p } => {
                let inv = BigRational::new(BigInt::one(), BigInt::from(*p));
                Fixed::kth_root_rational(&inv, *p as u32 - 1, work).render_sig(sig)
            }
            CapacityValue::Approx(v) => format!("{:.*}", sig.saturating_sub(1), v),
        }
    }

    /// Exact comparison against the critical capacity 1.
    pub fn cmp_one(&self) -> Ordering {
        match self {
            CapacityValue::Rational(q) => q.cmp(&BigRational::one()),
            CapacityValue::Surd(x) => {
                let one = AlgebraicElement::from_rational(x.algebra().clone(), BigRational::one());
                sign_at(&x.sub(&one), 0)
            }
            CapacityValue::PrimeRootRecip { .. } => Ordering::Less,
            CapacityValue::Approx(v) => v.partial_cmp(&1.0).unwrap_or(Ordering::Equal),
        }
    }

    /// Product, kept exact when the shapes allow it.
    pub fn try_mul(&self, other: &CapacityValue) -> Option<CapacityValue> {
        use CapacityValue::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Some(Rational(a * b)),
            (Rational(a), Surd(x)) | (Surd(x), Rational(a)) => {
                let y = x.scale(a);
                Some(match y.as_rational() {
                    Some(q) => Rational(q.clone()),
                    None => Surd(y),
                })
            }
            (Rational(a), p @ PrimeRootRecip { .. })
            | (p @ PrimeRootRecip { .. }, Rational(a)) => {
                if a.is_one() {
                    Some(p.clone())
                } else {
                    None
                }
            }
            (Surd(x), Surd(y)) => {
                if x.algebra() != y.algebra() {
                    return None;
                }
                let z = x.mul(y);
                Some(match z.as_rational() {
                    Some(q) => Rational(q.clone()),
                    None => Surd(z),
                })
            }
            _ => None,
        }
    }
}

/// An adelic set: one bounded set per place of Q, of which all but
/// finitely many are the local integer rings. Only the capacity factors
/// are kept; absent primes contribute 1.
#[derive(Clone, Debug)]
pub struct AdelicSetDescriptor {
    pub archimedean_factor: CapacityValue,
    pub finite_factors: BTreeMap<u64, CapacityValue>,
}

impl AdelicSetDescriptor {
    /// Product of all local capacities, exact when possible.
    pub fn capacity(&self) -> CapacityValue {
        let mut acc = self.archimedean_factor.clone();
        for f in self.finite_factors.values() {
            acc = match acc.try_mul(f) {
                Some(v) => v,
                None => CapacityValue::Approx(acc.approx_f64() * f.approx_f64()),
            };
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub enum CapfekError {
    /// Input outside the regime where the requested quantity is defined.
    OutOfRange(&'static str),
    /// 2s >= 4: the segment has capacity >= 1 and no degree bound exists.
    CapacityNotSubcritical,
    /// Criterion never fired up to n_max.
    NoBoundFound { n_max: usize },
    /// Fekete ascent missed the gradient tolerance; best iterate attached.
    Unconverged { best: FeketeResult },
}

impl fmt::Display for CapfekError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapfekError::OutOfRange(what) => write!(f, "out of range: {}", what),
            CapfekError::CapacityNotSubcritical => {
                write!(f, "segment capacity is at least 1; no degree bound applies")
            }
            CapfekError::NoBoundFound { n_max } => {
                write!(f, "criterion not satisfied for any n <= {}", n_max)
            }
            CapfekError::Unconverged { best } => {
                write!(f, "Fekete ascent did not converge for n = {}", best.n)
            }
        }
    }
}

impl std::error::Error for CapfekError {}

/// Capacity of a real segment: one quarter of its length.
pub fn segment_capacity(length: &AlgebraicElement) -> CapacityValue {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let v = length.scale(&quarter);
    match v.as_rational() {
        Some(q) => CapacityValue::Rational(q.clone()),
        None => CapacityValue::Surd(v),
    }
}

/// Capacity of Z_p as a subset of C_p: p^(-1/(p-1)).
pub fn zp_capacity(p: u64) -> CapacityValue {
    assert!(nt::is_prime_u64(p), "zp_capacity needs a prime, got {}", p);
    CapacityValue::PrimeRootRecip { p }
}

/// Adelic set for the totally real question: [-a_c, a_c] at the real
/// place, the filled Julia sets (capacity 1) everywhere else.
pub fn adelic_descriptor_totally_real(
    c: &BigRational,
) -> Result<AdelicSetDescriptor, CapfekError> {
    let radius = crate::realdyn::fixed_point_radius(c)
        .ok_or(CapfekError::OutOfRange("c > 1/4: no real fixed point"))?;
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(AdelicSetDescriptor {
        archimedean_factor: segment_capacity(&radius.scale(&two)),
        finite_factors: BTreeMap::new(),
    })
}

/// a_c / 2, the capacity of the adelic set above.
pub fn adelic_capacity_totally_real(c: &BigRational) -> Result<CapacityValue, CapfekError> {
    Ok(adelic_descriptor_totally_real(c)?.capacity())
}

/// Adelic set for the totally p-adic question when |c|_p <= 1: Z_p at p,
/// filled Julia sets (capacity 1) at every other place.
pub fn adelic_descriptor_totally_padic(
    c: &BigRational,
    ctx: &crate::padicdyn::PAdicContext,
) -> Result<AdelicSetDescriptor, CapfekError> {
    if matches!(ctx.val(c), crate::padicdyn::Valuation::Finite(v) if v < 0) {
        return Err(CapfekError::OutOfRange(
            "|c|_p > 1: the local set at p is not Z_p in this regime",
        ));
    }
    let mut finite = BTreeMap::new();
    finite.insert(ctx.prime(), zp_capacity(ctx.prime()));
    Ok(AdelicSetDescriptor {
        archimedean_factor: CapacityValue::Rational(BigRational::one()),
        finite_factors: finite,
    })
}

/// p^(-1/(p-1)), the capacity of the adelic set above.
pub fn adelic_capacity_totally_padic(
    c: &BigRational,
    ctx: &crate::padicdyn::PAdicContext,
) -> Result<CapacityValue, CapfekError> {
    Ok(adelic_descriptor_totally_padic(c, ctx)?.capacity())
}

#[derive(Clone, Copy, Debug)]
pub struct FeketeConfig {
    /// Sweep limit for the coordinate ascent.
    pub max_iters: usize,
    /// Convergence: max interior gradient magnitude below this.
    pub tol: f64,
    /// Relative tolerance used by table-agreement checks.
    pub rel_tol: f64,
    /// Default row limit for criterion traces.
    pub n_max: usize,
}

impl Default for FeketeConfig {
    fn default() -> Self {
        FeketeConfig {
            max_iters: 10_000,
            tol: 1e-12,
            rel_tol: 1e-9,
            n_max: 12,
        }
    }
}

/// An n-point Fekete configuration on [-s, s].
#[derive(Clone, Debug)]
pub struct FeketeResult {
    pub n: usize,
    /// Sorted ascending, endpoints at -s and s.
    pub points: Vec<f64>,
    /// log of the squared pairwise-difference product:
    /// sum over i < j of 2 log(x_j - x_i).
    pub log_product: f64,
    /// exp(log_product / (n (n-1))), the n-th diameter estimate.
    pub n_diameter: f64,
}

fn log_product_of(points: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            acc += 2.0 * (points[j] - points[i]).ln();
        }
    }
    acc
}

/// Gradient component at interior index i: sum over j != i of
/// 1/(x_i - x_j). Zero at a Fekete configuration.
fn stationarity_gradient(points: &[f64], i: usize) -> f64 {
    let mut g = 0.0;
    for (j, xj) in points.iter().enumerate() {
        if j != i {
            g += 1.0 / (points[i] - xj);
        }
    }
    g
}

fn result_from(n: usize, points: Vec<f64>) -> FeketeResult {
    let log_product = log_product_of(&points);
    FeketeResult {
        n,
        log_product,
        n_diameter: (log_product / (n * (n - 1)) as f64).exp(),
        points,
    }
}

/// Maximize the pairwise-difference product of n points on [-s, s].
///
/// The extreme points of an interval Fekete set are always the endpoints,
/// so they are pinned; each interior point is then the unique zero of the
/// monotone stationarity sum between its neighbors, found by Newton steps
/// safeguarded with bisection. Initialized at Chebyshev-Lobatto nodes,
/// which are already within a percent of optimal.
pub fn fekete_points(n: usize, s: f64, cfg: &FeketeConfig) -> Result<FeketeResult, CapfekError> {
    assert!(n >= 2, "need at least two points");
    assert!(s > 0.0 && s.is_finite(), "half-length must be positive");
    let m = n - 1;
    let mut x: Vec<f64> = (0..n)
        .map(|i| -s * (std::f64::consts::PI * i as f64 / m as f64).cos())
        .collect();
    x[0] = -s;
    x[m] = s;
    if n == 2 {
        return Ok(result_from(n, x));
    }
    for _ in 0..cfg.max_iters {
        let mut moved = 0.0f64;
        for i in 1..m {
            // solve sum_{j != i} 1/(t - x_j) = 0 for t in (x[i-1], x[i+1]);
            // the sum decreases from +inf to -inf there, so the zero is
            // unique and bracketed
            let (mut blo, mut bhi) = (x[i - 1], x[i + 1]);
            let t_was = x[i];
            let mut t = x[i];
            for _ in 0..80 {
                let mut g = 0.0;
                let mut dg = 0.0;
                for (j, xj) in x.iter().enumerate() {
                    if j != i {
                        let d = t - xj;
                        g += 1.0 / d;
                        dg -= 1.0 / (d * d);
                    }
                }
                if g == 0.0 {
                    break;
                }
                if g > 0.0 {
                    blo = t;
                } else {
                    bhi = t;
                }
                let mut tn = t - g / dg;
                if !(tn > blo && tn < bhi) {
                    tn = 0.5 * (blo + bhi);
                }
                if (tn - t).abs() <= 4.0 * f64::EPSILON * s {
                    t = tn;
                    break;
                }
                t = tn;
            }
            x[i] = t;
            moved = moved.max((t - t_was).abs());
        }
        let gmax = (1..m)
            .map(|i| stationarity_gradient(&x, i).abs())
            .fold(0.0f64, f64::max);
        // The gradient components scale like n^2 / spacing, so past
        // n ~ 50 their f64 noise floor sits above any fixed tolerance.
        // A sweep that moved no point is equally stationary: every
        // coordinate solve already terminated at machine resolution.
        if gmax < cfg.tol || moved <= 4.0 * f64::EPSILON * s {
            return Ok(result_from(n, x));
        }
    }
    Err(CapfekError::Unconverged {
        best: result_from(n, x),
    })
}

fn dn_cache() -> &'static Mutex<HashMap<usize, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// log D_n: the maximal squared pairwise-difference product of n points
/// in [-1/2, 1/2], in the log domain. Memoized at default config.
pub fn dn_log(n: usize, cfg: &FeketeConfig) -> Result<f64, CapfekError> {
    let default = FeketeConfig::default();
    let cacheable = cfg.tol == default.tol && cfg.max_iters == default.max_iters;
    if cacheable {
        if let Some(&v) = dn_cache().lock().unwrap().get(&n) {
            return Ok(v);
        }
    }
    let v = fekete_points(n, 0.5, cfg)?.log_product;
    if cacheable {
        dn_cache().lock().unwrap().insert(n, v);
    }
    Ok(v)
}

/// D_n itself (exact value e.g. 1/16 for n = 3); fine in f64 through the
/// n <= 12 default range.
pub fn dn(n: usize, cfg: &FeketeConfig) -> Result<f64, CapfekError> {
    Ok(dn_log(n, cfg)?.exp())
}

/// The discriminant floor b_n = n^(2n) / (n!)^2, exactly.
pub fn bn_exact(n: usize) -> BigRational {
    let nb = BigInt::from(n);
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= BigInt::from(k);
    }
    BigRational::new(nb.pow(2 * n as u32), &fact * &fact)
}

fn ln_bn(n: usize) -> f64 {
    let nf = n as f64;
    let mut ln_fact = 0.0;
    for k in 2..=n {
        ln_fact += (k as f64).ln();
    }
    2.0 * (nf * nf.ln() - ln_fact)
}

/// One row of the criterion trace. Ratios are forward: a_ratio at row n
/// is a_{n+1}/a_n, absent on the last row.
#[derive(Clone, Debug)]
pub struct CriterionRow {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub ln_a: f64,
    pub ln_b: f64,
    pub a_ratio: Option<f64>,
    pub b_ratio: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct CriterionTrace {
    pub rows: Vec<CriterionRow>,
    pub n0: Option<usize>,
}

/// Comparisons of a_n with b_n happen on logs; two quantities closer than
/// this count as tied (a_2 = b_2 = 4 exactly when 2s = 2, and the
/// criterion must not fire on rounding noise).
const LN_TIE_GUARD: f64 = 1e-9;

fn strictly_less(ln_x: f64, ln_y: f64) -> bool {
    ln_x + LN_TIE_GUARD < ln_y
}

struct CriterionBuilder<'a> {
    ln_2s: f64,
    cfg: &'a FeketeConfig,
    ln_a: HashMap<usize, f64>,
}

impl<'a> CriterionBuilder<'a> {
    fn new(s: &AlgebraicElement, cfg: &'a FeketeConfig) -> CriterionBuilder<'a> {
        let two = BigRational::from_integer(BigInt::from(2));
        CriterionBuilder {
            ln_2s: embedding_f64(&s.scale(&two), 0).ln(),
            cfg,
            ln_a: HashMap::new(),
        }
    }

    fn ln_a(&mut self, n: usize) -> Result<f64, CapfekError> {
        if let Some(&v) = self.ln_a.get(&n) {
            return Ok(v);
        }
        let v = (n * (n - 1)) as f64 * self.ln_2s + dn_log(n, self.cfg)?;
        self.ln_a.insert(n, v);
        Ok(v)
    }

    /// a_n < b_n and a_{n+1}/a_n < b_{n+1}/b_n, both strict modulo the
    /// tie guard.
    fn criterion_holds_at(&mut self, n: usize) -> Result<bool, CapfekError> {
        let (la, la1) = (self.ln_a(n)?, self.ln_a(n + 1)?);
        let (lb, lb1) = (ln_bn(n), ln_bn(n + 1));
        Ok(strictly_less(la, lb) && strictly_less(la1 - la, lb1 - lb))
    }

    fn row(&mut self, n: usize, with_ratio: bool) -> Result<CriterionRow, CapfekError> {
        let ln_a = self.ln_a(n)?;
        let ln_b = ln_bn(n);
        let (a_ratio, b_ratio) = if with_ratio {
            (
                Some((self.ln_a(n + 1)? - ln_a).exp()),
                Some((ln_bn(n + 1) - ln_b).exp()),
            )
        } else {
            (None, None)
        };
        Ok(CriterionRow {
            n,
            a: ln_a.exp(),
            b: ln_b.exp(),
            ln_a,
            ln_b,
            a_ratio,
            b_ratio,
        })
    }
}

fn check_subcritical(s: &AlgebraicElement) -> Result<(), CapfekError> {
    // 2s < 4, i.e. s < 2, exactly
    let two = AlgebraicElement::from_rational(s.algebra().clone(), BigRational::from_integer(BigInt::from(2)));
    match crate::exact::embed::cmp_embeddings(s, 0, &two, 0) {
        Ordering::Less => Ok(()),
        _ => Err(CapfekError::CapacityNotSubcritical),
    }
}

/// Full a_n/b_n trace for n = 2..n_max, with the first n where the
/// two-condition criterion holds (if any in range).
pub fn criterion_sequences(
    s: &AlgebraicElement,
    n_max: usize,
    cfg: &FeketeConfig,
) -> Result<CriterionTrace, CapfekError> {
    assert!(n_max >= 2);
    check_subcritical(s)?;
    let mut bld = CriterionBuilder::new(s, cfg);
    let mut rows = Vec::new();
    let mut n0 = None;
    for n in 2..=n_max {
        rows.push(bld.row(n, n < n_max)?);
        if n0.is_none() && n < n_max && bld.criterion_holds_at(n)? {
            n0 = Some(n);
        }
    }
    Ok(CriterionTrace { rows, n0 })
}

#[derive(Clone, Debug)]
pub struct DegreeBoundResult {
    /// Smallest n with a_n < b_n and a_{n+1}/a_n < b_{n+1}/b_n. Every
    /// algebraic integer with all conjugates in [-s, s] has degree < n0.
    pub n0: usize,
    /// Rows 2..=n0+1 documenting the decision.
    pub trace: CriterionTrace,
}

/// Find the degree bound for algebraic integers with all conjugates in
/// [-s, s], stopping at the first n where the criterion fires.
pub fn degree_bound(
    s: &AlgebraicElement,
    n_max: usize,
    cfg: &FeketeConfig,
) -> Result<DegreeBoundResult, CapfekError> {
    assert!(n_max >= 2);
    check_subcritical(s)?;
    let mut bld = CriterionBuilder::new(s, cfg);
    let mut rows = Vec::new();
    for n in 2..=n_max {
        rows.push(bld.row(n, true)?);
        if bld.criterion_holds_at(n)? {
            rows.push(bld.row(n + 1, false)?);
            return Ok(DegreeBoundResult {
                n0: n,
                trace: CriterionTrace {
                    rows,
                    n0: Some(n),
                },
            });
        }
    }
    Err(CapfekError::NoBoundFound { n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::algebra::Algebra;
    use crate::exact::parse_decimal;
    use crate::padicdyn::PAdicContext;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn elem_q(q: BigRational) -> AlgebraicElement {
        AlgebraicElement::from_rational(Algebra::rationals(), q)
    }

    fn golden() -> AlgebraicElement {
        let alg = Algebra::quadratic(&BigInt::from(5)).unwrap();
        AlgebraicElement::new(alg, vec![rat(1, 2), rat(1, 2)])
    }

    /// The exact D_n table for [-1/2, 1/2].
    fn dn_table() -> Vec<(usize, BigRational)> {
        let big = |s: &str| -> BigInt { s.parse().unwrap() };
        vec![
            (2, rat(1, 1)),
            (3, rat(1, 16)),
            (4, rat(1, 3125)),
            (5, rat(27, 210_827_008)),
            (6, BigRational::new(BigInt::one(), big("259356749904"))),
            (7, BigRational::new(big("3125"), big("368036388053733408768"))),
            (
                8,
                BigRational::new(big("3125"), big("2333172671504650870750167741")),
            ),
        ]
    }

    #[test]
    fn segment_capacities() {
        // length 2 a_c at c = -1: (1 + sqrt5)/4
        let two = rat(2, 1);
        let cap = segment_capacity(&golden().scale(&two));
        match &cap {
            CapacityValue::Surd(x) => assert_eq!(x.coords(), &[rat(1, 4), rat(1, 4)]),
            other => panic!("expected surd, got {:?}", other),
        }
        assert_eq!(cap.exact_form().unwrap(), "(1+sqrt(5))/4");
        assert!((cap.approx_f64() - 0.8090169943749475).abs() < 1e-12);
        assert_eq!(cap.cmp_one(), Ordering::Less);

        assert_eq!(
            segment_capacity(&elem_q(rat(0, 1))),
            CapacityValue::Rational(rat(0, 1))
        );
        let crit = segment_capacity(&elem_q(rat(4, 1)));
        assert_eq!(crit, CapacityValue::Rational(rat(1, 1)));
        assert_eq!(crit.cmp_one(), Ordering::Equal);
    }

    #[test]
    fn zp_capacity_examples() {
        let c3 = zp_capacity(3);
        assert_eq!(c3.exact_form().unwrap(), "3^(-1/2)");
        assert!((c3.approx_f64() - 0.5773502691896258).abs() < 1e-12);
        assert!((zp_capacity(5).approx_f64() - 0.6687403049764220).abs() < 1e-12);
        assert!((zp_capacity(7).approx_f64() - 0.7230200263994838).abs() < 1e-12);
    }

    #[test]
    fn zp_capacity_thirty_digits() {
        // frozen against an independent high-precision evaluation
        assert_eq!(
            zp_capacity(3).render(30),
            "0.577350269189625764509148780502"
        );
        assert_eq!(
            zp_capacity(5).render(30),
            "0.668740304976422024003233073259"
        );
        assert_eq!(
            zp_capacity(7).render(30),
            "0.723020026399483776254842559277"
        );
        // self-check: parse the rendering back and verify x^(p-1) * p = 1
        // to the implied precision
        for p in [3u64, 5, 7] {
            let s = zp_capacity(p).render(30);
            let x = parse_decimal(&s).unwrap();
            let mut pw = BigRational::one();
            for _ in 0..(p - 1) {
                pw *= &x;
            }
            let err = (pw * BigRational::from_integer(BigInt::from(p)) - BigRational::one()).abs();
            assert!(err < rat(1, 1) * BigRational::new(BigInt::one(), BigInt::from(10).pow(27)));
        }
    }

    #[test]
    fn zp_capacity_increases_toward_one() {
        let mut last = 0.0;
        for p in 2..=97u64 {
            if !nt::is_prime_u64(p) {
                continue;
            }
            let v = zp_capacity(p).approx_f64();
            assert!(v > last && v < 1.0, "p = {}", p);
            last = v;
        }
        assert!(last > 0.95);
    }

    #[test]
    fn adelic_totally_real() {
        let d = adelic_descriptor_totally_real(&rat(-1, 1)).unwrap();
        assert!(d.finite_factors.is_empty());
        assert_eq!(d.capacity().exact_form().unwrap(), "(1+sqrt(5))/4");

        assert_eq!(
            adelic_capacity_totally_real(&rat(-2, 1)).unwrap(),
            CapacityValue::Rational(rat(1, 1))
        );
        assert_eq!(
            adelic_capacity_totally_real(&rat(1, 4)).unwrap(),
            CapacityValue::Rational(rat(1, 4))
        );
        assert_eq!(
            adelic_capacity_totally_real(&rat(0, 1)).unwrap(),
            CapacityValue::Rational(rat(1, 2))
        );
        assert!(matches!(
            adelic_capacity_totally_real(&rat(1, 2)),
            Err(CapfekError::OutOfRange(_))
        ));
    }

    #[test]
    fn adelic_totally_padic() {
        let p3 = PAdicContext::new(3).unwrap();
        let v = adelic_capacity_totally_padic(&rat(-1, 1), &p3).unwrap();
        assert_eq!(v, CapacityValue::PrimeRootRecip { p: 3 });

        let p7 = PAdicContext::new(7).unwrap();
        let d = adelic_descriptor_totally_padic(&rat(0, 1), &p7).unwrap();
        assert_eq!(d.archimedean_factor, CapacityValue::Rational(rat(1, 1)));
        assert_eq!(d.capacity(), CapacityValue::PrimeRootRecip { p: 7 });

        let p5 = PAdicContext::new(5).unwrap();
        assert!(matches!(
            adelic_capacity_totally_padic(&rat(1, 5), &p5),
            Err(CapfekError::OutOfRange(_))
        ));
    }

    #[test]
    fn fekete_two_and_three_points() {
        let cfg = FeketeConfig::default();
        let r = fekete_points(2, 1.0, &cfg).unwrap();
        assert_eq!(r.points, vec![-1.0, 1.0]);
        assert!((r.n_diameter - 2.0).abs() < 1e-15);

        let r = fekete_points(3, 0.5, &cfg).unwrap();
        assert_eq!(r.points.len(), 3);
        assert_eq!(r.points[0], -0.5);
        assert_eq!(r.points[2], 0.5);
        assert!(r.points[1].abs() < 1e-9);
        assert!((r.log_product.exp() - 1.0 / 16.0).abs() < 1e-9 / 16.0);
    }

    #[test]
    fn fekete_result_invariants() {
        let cfg = FeketeConfig::default();
        for n in [4usize, 6, 9] {
            let s = 1.3;
            let r = fekete_points(n, s, &cfg).unwrap();
            assert!(r.points.windows(2).all(|w| w[0] < w[1]), "sorted");
            assert!(r.points.iter().all(|&x| (-s..=s).contains(&x)));
            assert!(r.n_diameter <= 2.0 * s + 1e-12);
            for i in 1..n - 1 {
                assert!(
                    stationarity_gradient(&r.points, i).abs() < cfg.tol,
                    "stationarity at {}",
                    i
                );
            }
        }
    }

    #[test]
    fn dn_matches_exact_table() {
        let cfg = FeketeConfig::default();
        for (n, exact) in dn_table() {
            let got = dn(n, &cfg).unwrap();
            let want = exact.to_f64().unwrap();
            assert!(
                ((got - want) / want).abs() < cfg.rel_tol,
                "n = {}: got {:e}, want {:e}",
                n,
                got,
                want
            );
        }
    }

    #[test]
    fn n_diameters_decrease_toward_limit() {
        let cfg = FeketeConfig::default();
        let mut prev = f64::INFINITY;
        let mut d12 = 0.0;
        for n in 2..=12 {
            let d = (dn_log(n, &cfg).unwrap() / ((n * (n - 1)) as f64)).exp();
            assert!(d <= prev + 1e-9, "n = {}", n);
            prev = d;
            d12 = d;
        }
        // the sequence is still visibly above its limit 1/4 at n = 12;
        // convergence is logarithmically slow
        assert!(d12 > 0.25 && d12 - 0.25 < 0.1);
        assert!((d12 - 0.33525).abs() < 5e-5);
    }

    #[test]
    fn scaling_covariance() {
        let cfg = FeketeConfig::default();
        let base = fekete_points(5, 0.5, &cfg).unwrap().n_diameter;
        for lambda in [2.0f64, 3.0] {
            let scaled = fekete_points(5, 0.5 * lambda, &cfg).unwrap().n_diameter;
            assert!(((scaled / base) - lambda).abs() / lambda < 1e-8);
        }
    }

    #[test]
    fn grid_oracle_three_points() {
        let cfg = FeketeConfig::default();
        let r = fekete_points(3, 0.5, &cfg).unwrap();
        // brute force: endpoints fixed, scan the middle point
        let mut best = f64::NEG_INFINITY;
        let step = 1e-4;
        let mut x = -0.5 + step;
        while x < 0.5 {
            let v = log_product_of(&[-0.5, x, 0.5]);
            if v > best {
                best = v;
            }
            x += step;
        }
        assert!(r.log_product >= best - 1e-12);
        assert!((r.log_product - best).abs() < 1e-6);
    }

    #[test]
    fn grid_oracle_four_points() {
        let cfg = FeketeConfig::default();
        let r = fekete_points(4, 0.5, &cfg).unwrap();
        // brute force the two interior points on the same grid; product
        // form (monotone with the log) keeps the scan cheap
        let step = 1e-4;
        let k = (1.0 / step) as usize - 1;
        let grid: Vec<f64> = (1..=k).map(|i| -0.5 + i as f64 * step).collect();
        let mut best = f64::NEG_INFINITY;
        let (mut bx, mut by) = (0.0, 0.0);
        for (i, &x2) in grid.iter().enumerate() {
            let left = (x2 + 0.5) * (0.5 - x2);
            for &x3 in &grid[i + 1..] {
                let v = left * (x3 + 0.5) * (0.5 - x3) * (x3 - x2);
                if v > best {
                    best = v;
                    bx = x2;
                    by = x3;
                }
            }
        }
        let best_log = log_product_of(&[-0.5, bx, by, 0.5]);
        assert!(r.log_product >= best_log - 1e-12);
        assert!((r.log_product - best_log).abs() < 1e-6);
    }

    #[test]
    fn bn_values() {
        assert_eq!(bn_exact(2), rat(4, 1));
        assert_eq!(bn_exact(3), rat(81, 4)); // 20.25
        assert_eq!(bn_exact(4), rat(65536, 576));
        assert_eq!(bn_exact(6), rat(104_976, 25)); // 4199.04 exactly
        let b7 = bn_exact(7).to_f64().unwrap();
        assert!((b7 - 26700.013891).abs() < 1e-5);
        let b8 = bn_exact(8).to_f64().unwrap();
        assert!((b8 - 173140.5309549).abs() < 1e-5);
        // the f64 ladder agrees with the exact one
        for n in 2..=12 {
            let want = bn_exact(n).to_f64().unwrap();
            assert!(((ln_bn(n).exp() - want) / want).abs() < 1e-12, "n = {}", n);
        }
    }

    #[test]
    fn criterion_trace_for_golden_half_length() {
        let cfg = FeketeConfig::default();
        let trace = criterion_sequences(&golden(), 9, &cfg).unwrap();
        assert_eq!(trace.rows.len(), 8);
        assert_eq!(trace.rows[0].n, 2);
        // a_2 = (1+sqrt5)^2 = 6 + 2 sqrt5
        let a2 = 6.0 + 2.0 * 5.0f64.sqrt();
        assert!((trace.rows[0].a - a2).abs() / a2 < 1e-9);
        assert!((trace.rows[0].b - 4.0).abs() < 1e-12);
        let row7 = &trace.rows[5];
        assert_eq!(row7.n, 7);
        assert!((row7.a - 22371.7506542).abs() / row7.a < 1e-6);
        assert!((row7.b - 26700.0138907).abs() / row7.b < 1e-6);
        let row8 = &trace.rows[6];
        assert!((row8.a - 48740.5866333).abs() / row8.a < 1e-6);
        // the first qualifying n is 7: a_7 < b_7 and the ratio condition
        assert_eq!(trace.n0, Some(7));
        assert!(row7.a < row7.b);
        assert!(row7.a_ratio.unwrap() < row7.b_ratio.unwrap());
        // and not earlier: a_n > b_n for n <= 6
        for row in &trace.rows[..5] {
            assert!(row.a > row.b, "n = {}", row.n);
        }
    }

    #[test]
    fn degree_bound_golden() {
        let cfg = FeketeConfig::default();
        let r = degree_bound(&golden(), 12, &cfg).unwrap();
        assert_eq!(r.n0, 7);
        assert_eq!(r.trace.rows.last().unwrap().n, 8);
        assert_eq!(r.trace.n0, Some(7));
    }

    #[test]
    fn degree_bound_unit_half_length() {
        // s = 1: capacity 1/2; regression anchor for the smallest bound
        let cfg = FeketeConfig::default();
        let r = degree_bound(&elem_q(rat(1, 1)), 12, &cfg).unwrap();
        assert_eq!(r.n0, 3);
        // a_2 = b_2 = 4 exactly; the tie guard must keep n = 2 from firing
        let row2 = &r.trace.rows[0];
        assert!((row2.a - 4.0).abs() < 1e-12 && (row2.b - 4.0).abs() < 1e-12);
    }

    #[test]
    fn degree_bound_rejects_critical_capacity() {
        let cfg = FeketeConfig::default();
        assert!(matches!(
            degree_bound(&elem_q(rat(2, 1)), 12, &cfg),
            Err(CapfekError::CapacityNotSubcritical)
        ));
        assert!(matches!(
            criterion_sequences(&elem_q(rat(5, 2)), 8, &cfg),
            Err(CapfekError::CapacityNotSubcritical)
        ));
    }

    #[test]
    fn degree_bound_can_run_out_of_rows() {
        // s = (sqrt2 + sqrt6)/2 = 1.93...: subcritical but the criterion
        // needs n in the high nineties, far beyond this n_max
        let alg = Algebra::make(&[BigInt::from(2), BigInt::from(6)]).unwrap();
        let s = AlgebraicElement::new(
            alg,
            vec![rat(0, 1), rat(1, 2), rat(1, 2), rat(0, 1)],
        );
        let cfg = FeketeConfig::default();
        match degree_bound(&s, 20, &cfg) {
            Err(CapfekError::NoBoundFound { n_max }) => assert_eq!(n_max, 20),
            other => panic!("expected NoBoundFound, got {:?}", other),
        }
    }
}
