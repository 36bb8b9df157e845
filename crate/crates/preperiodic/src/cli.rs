//! Command-line frontend: parse a rational parameter and options, run the
//! classifications and pipelines, and emit text or JSON reports.
//!
//! Exit codes: 0 on success, 2 on usage errors (bad literals, non-prime
//! p), 3 on mathematically out-of-range requests (p = 2, supercritical
//! capacity, infinite sets, degree bounds past the budget). JSON output
//! is deterministic: element lists are sorted and every exact value is
//! rendered as a canonical string, with decimal expansions controlled by
//! the PREPERIODIC_DIGITS environment variable (default 30 significant
//! digits). Timing goes to stderr so reports stay byte-identical.

use crate::capfek::{self, CapacityValue, CapfekError, FeketeConfig};
use crate::exact::algebra::{Algebra, AlgebraicElement};
use crate::exact::fixed::Fixed;
use crate::exact::poly::IntPolynomial;
use crate::exact::{parse_decimal, parse_rational, squarefree_split};
use crate::padicdyn::{self, PAdicContext, PAdicShape, PAdicWitness};
use crate::preper::{
    self, ConjugatedModel, OrbitOutcome, PreperError, PreperOptions, RejectReason,
};
use crate::realdyn::{self, TrichotomyTag};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

pub const DIGITS_ENV: &str = "PREPERIODIC_DIGITS";

#[derive(Parser, Debug)]
#[command(
    name = "preperiodic",
    about = "classify, bound, and enumerate preperiodic points of x^2 + c \
             under totally real / totally p-adic constraints",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Trichotomy classification, totally real and (with --p) totally p-adic.
    Classify {
        /// Parameter c, as "A/B" or a decimal literal.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Odd prime for the p-adic side.
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the totally real preperiodic set exactly.
    Preper {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Refuse enumeration past this candidate degree.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Criterion search horizon.
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Adelic capacity of the relevant product set.
    Capacity {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Odd prime: report the totally p-adic capacity instead.
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Fekete points and n-diameter of the conjugated segment.
    Fekete {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Number of points (>= 2).
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The a_n / b_n criterion trace and the degree bound it proves.
    DegreeBound {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check one point independently: preperiodic or certified not.
    Verify {
        /// The point, e.g. "1/3", "sqrt(2)", "(1+sqrt(5))/2".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        common: Common,
    },
}

// ---------------------------------------------------------------------------
// report types (the JSON schema; see docs/report-schema.json)

/// An exact value with its decimal expansion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueRender {
    pub exact: String,
    pub decimal: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_degree: Option<usize>,
    pub digits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealSide {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radius: Option<ValueRender>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub capacity: Option<ValueRender>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_fixed_point: Option<ValueRender>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JuliaShape {
    pub shape: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c_valuation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PAdicSide {
    pub p: u64,
    pub tag: String,
    pub julia: JuliaShape,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cantor_in_qp: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub capacity: Option<ValueRender>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub totally_real: RealSide,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub totally_padic: Option<PAdicSide>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    /// "totally-real" or "totally-p-adic".
    pub question: String,
    pub archimedean: ValueRender,
    pub finite_factors: BTreeMap<u64, ValueRender>,
    pub product: ValueRender,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeketeReport {
    pub n: usize,
    pub segment_half_length: ValueRender,
    pub points: Vec<f64>,
    pub log_product: f64,
    pub n_diameter: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub ln_a: f64,
    pub ln_b: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeBoundReport {
    pub segment_half_length: ValueRender,
    pub n0: usize,
    pub max_degree: usize,
    pub trace: Vec<TraceRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementReport {
    pub value: ValueRender,
    /// sqrt(b) times the value: the algebraic integer that was classified.
    pub integral_model: String,
    pub min_poly: String,
    /// Ascending coefficients of the primitive minimal polynomial.
    pub min_poly_coeffs: Vec<String>,
    pub tail: usize,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreperReport {
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub candidates: Option<usize>,
    pub elements: Vec<ElementReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub unresolved: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub x: ValueRender,
    /// "preperiodic" | "rejected" | "unresolved".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub steps_used: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verb: String,
    pub inputs: Inputs,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub capacity: Option<CapacityReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fekete: Option<FeketeReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree_bound: Option<DegreeBoundReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preper: Option<PreperReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verify: Option<VerifyReport>,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

fn out_of_range(msg: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: msg.into(),
    }
}

// ---------------------------------------------------------------------------
// rendering helpers

/// Exact decimal expansion of a real embedding (index 0) of an element.
fn element_decimal(x: &AlgebraicElement, sig: usize) -> String {
    let work = sig as u32 + 12;
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

fn render_element(x: &AlgebraicElement, sig: usize) -> ValueRender {
    ValueRender {
        exact: x.surd_string(),
        decimal: element_decimal(x, sig),
    }
}

fn render_capacity(v: &CapacityValue, sig: usize) -> ValueRender {
    ValueRender {
        exact: v
            .exact_form()
            .unwrap_or_else(|| format!("~{}", v.approx_f64())),
        decimal: v.render(sig),
    }
}

/// "5*t^2 - 5*t + 1" from ascending coefficients.
fn poly_string(p: &IntPolynomial) -> String {
    let d = match p.degree() {
        None => return "0".into(),
        Some(d) => d,
    };
    let mut out = String::new();
    for k in (0..=d).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let show_mag = !mag.is_one() || k == 0;
        if show_mag {
            let _ = write!(out, "{}", mag);
        }
        if k > 0 {
            if show_mag {
                out.push('*');
            }
            out.push('t');
            if k > 1 {
                let _ = write!(out, "^{}", k);
            }
        }
    }
    out
}

fn tag_string(tag: TrichotomyTag) -> &'static str {
    match tag {
        TrichotomyTag::Empty => "empty",
        TrichotomyTag::NonemptyFinite => "nonempty-finite",
        TrichotomyTag::FiniteUnknownNonempty => "finite-unknown-nonempty",
        TrichotomyTag::Infinite => "infinite",
    }
}

fn reason_string(r: RejectReason) -> &'static str {
    match r {
        RejectReason::ArchimedeanEscape => "archimedean-escape",
        RejectReason::NonIntegral => "non-integral",
        RejectReason::PAdicEscape => "p-adic-escape",
    }
}

// ---------------------------------------------------------------------------
// surd literal parser: signed sums/products/quotients of rationals and
// sqrt(rational), e.g. "(1+sqrt(5))/2", "-sqrt(8)/4", "1/3"

/// Value under construction: coefficient per squarefree radicand
/// (radicand 1 holds the rational part).
type SurdVal = BTreeMap<BigInt, BigRational>;

fn sv_rational(q: BigRational) -> SurdVal {
    let mut m = SurdVal::new();
    if !q.is_zero() {
        m.insert(BigInt::one(), q);
    }
    m
}

fn sv_add(a: &SurdVal, b: &SurdVal, sign: i32) -> SurdVal {
    let mut out = a.clone();
    for (k, v) in b {
        let term = if sign < 0 { -v.clone() } else { v.clone() };
        let e = out.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += term;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sv_mul(a: &SurdVal, b: &SurdVal) -> SurdVal {
    let mut out = SurdVal::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            // sqrt(ka) sqrt(kb) = g sqrt(ka kb / g^2), g = gcd
            let g = ka.gcd(kb);
            let key = (ka / &g) * (kb / &g);
            let coeff = va * vb * BigRational::from_integer(g);
            let e = out.entry(key).or_insert_with(BigRational::zero);
            *e += coeff;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sv_div(a: &SurdVal, b: &SurdVal) -> Result<SurdVal, String> {
    if b.is_empty() {
        return Err("division by zero".into());
    }
    // rational divisor
    if b.len() == 1 && b.keys().next().unwrap().is_one() {
        let d = b.values().next().unwrap();
        let inv = sv_rational(d.recip());
        return Ok(sv_mul(a, &inv));
    }
    // single radical term: 1/(c sqrt(r)) = sqrt(r)/(c r)
    if b.len() == 1 {
        let (r, c) = b.iter().next().unwrap();
        let mut inv = SurdVal::new();
        inv.insert(r.clone(), (c * BigRational::from_integer(r.clone())).recip());
        return Ok(sv_mul(a, &inv));
    }
    // binomial u + v sqrt(r): multiply through by the conjugate
    if b.len() == 2 {
        let mut it = b.iter();
        let (k1, v1) = it.next().unwrap();
        let (k2, v2) = it.next().unwrap();
        let mut conj = SurdVal::new();
        conj.insert(k1.clone(), v1.clone());
        conj.insert(k2.clone(), -v2.clone());
        let den = sv_mul(b, &conj); // rational (or single-term) now
        return sv_div(&sv_mul(a, &conj), &den);
    }
    Err("unsupported divisor (more than two surd terms)".into())
}

struct SurdParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> SurdParser<'a> {
    fn new(s: &'a str) -> Self {
        SurdParser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SurdVal, String> {
        let mut acc = if self.eat(b'-') {
            sv_add(&SurdVal::new(), &self.term()?, -1)
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = sv_add(&acc, &self.term()?, 1);
            } else if self.eat(b'-') {
                acc = sv_add(&acc, &self.term()?, -1);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SurdVal, String> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = sv_mul(&acc, &self.factor()?);
            } else if self.eat(b'/') {
                acc = sv_div(&acc, &self.factor()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SurdVal, String> {
        if self.eat(b'-') {
            return Ok(sv_add(&SurdVal::new(), &self.factor()?, -1));
        }
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err("expected ')'".into());
                }
                Ok(v)
            }
            Some(b's') => {
                let rest = &self.src[self.pos..];
                if rest.len() < 4 || &rest[..4] != b"sqrt" {
                    return Err("expected 'sqrt'".into());
                }
                self.pos += 4;
                if !self.eat(b'(') {
                    return Err("expected '(' after sqrt".into());
                }
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err("expected ')'".into());
                }
                sv_sqrt(&inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            _ => Err("expected a number, sqrt(...), or '('".into()),
        }
    }

    fn number(&mut self) -> Result<SurdVal, String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .map_or(false, |c| c.is_ascii_digit() || *c == b'.')
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        parse_decimal(text)
            .map(sv_rational)
            .map_err(|_| format!("bad number literal '{}'", text))
    }
}

fn sv_sqrt(v: &SurdVal) -> Result<SurdVal, String> {
    let q = match (v.len(), v.keys().next()) {
        (0, _) => return Ok(SurdVal::new()),
        (1, Some(k)) if k.is_one() => v.values().next().unwrap().clone(),
        _ => return Err("sqrt argument must be rational".into()),
    };
    if q.is_negative() {
        return Err("sqrt argument must be nonnegative".into());
    }
    // sqrt(a/b) = sqrt(ab)/b = k sqrt(m) / b
    let (k, m) = squarefree_split(&(q.numer() * q.denom()));
    let mut out = SurdVal::new();
    out.insert(m, BigRational::new(k, q.denom().clone()));
    Ok(out)
}

/// Parse a surd literal into an element of the smallest supporting algebra.
pub fn parse_surd(s: &str) -> Result<AlgebraicElement, String> {
    let mut p = SurdParser::new(s);
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(format!("trailing input at byte {}", p.pos));
    }
    element_from_surd_val(&v).ok_or_else(|| "needs more than two independent square roots".into())
}

fn element_from_surd_val(v: &SurdVal) -> Option<AlgebraicElement> {
    let keys: Vec<BigInt> = v.keys().filter(|k| !k.is_one()).cloned().collect();
    let rational = v
        .get(&BigInt::one())
        .cloned()
        .unwrap_or_else(BigRational::zero);
    if keys.is_empty() {
        return Some(AlgebraicElement::from_rational(
            Algebra::rationals(),
            rational,
        ));
    }
    // candidate generator sets: each key alone, then pairs (a pair can
    // cover a third key through the product basis element)
    let mut gen_sets: Vec<Vec<BigInt>> = keys.iter().map(|k| vec![k.clone()]).collect();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            gen_sets.push(vec![keys[i].clone(), keys[j].clone()]);
        }
    }
    'outer: for gens in gen_sets {
        let alg = match Algebra::make(&gens) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let mut coords = vec![BigRational::zero(); alg.dim()];
        coords[0] = rational.clone();
        for (key, coeff) in v {
            if key.is_one() {
                continue;
            }
            let mut placed = false;
            for mask in 1..alg.dim() {
                let (sq, core) = squarefree_split(&alg.basis_radicand(mask));
                if &core == key {
                    // coeff sqrt(key) = (coeff / sq) sqrt(radicand)
                    coords[mask] = coeff / BigRational::from_integer(sq);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'outer;
            }
        }
        return Some(AlgebraicElement::new(alg, coords));
    }
    None
}

// ---------------------------------------------------------------------------
// verb handlers

fn parse_c(text: &str) -> Result<BigRational, Failure> {
    parse_rational(text)
        .map_err(|_| usage(format!("malformed rational literal '{}'", text)))
}

fn check_p(p: u64) -> Result<PAdicContext, Failure> {
    if p == 2 {
        return Err(out_of_range(
            "p = 2 is not supported: the totally p-adic classification is \
             stated for odd primes only",
        ));
    }
    if !crate::exact::nt::is_prime_u64(p) {
        return Err(usage(format!("p must be an odd prime, got {}", p)));
    }
    PAdicContext::new(p).map_err(|e| usage(format!("{:?}", e)))
}

fn classify_report(c: &BigRational, p: Option<u64>, sig: usize) -> Result<Classification, Failure> {
    let real = realdyn::classify_totally_real(c);
    let totally_real = RealSide {
        tag: tag_string(real.tag).into(),
        radius: real.radius.as_ref().map(|x| render_element(x, sig)),
        capacity: real.capacity.as_ref().map(|x| render_element(x, sig)),
        witness_fixed_point: real.witness.as_ref().map(|x| render_element(x, sig)),
    };
    let totally_padic = match p {
        None => None,
        Some(p) => {
            let ctx = check_p(p)?;
            let tri = padicdyn::classify_totally_padic(&ctx, c);
            let julia = match padicdyn::classify_nonarch_filled_julia(&ctx, c) {
                PAdicShape::UnitBall => JuliaShape {
                    shape: "unit-ball".into(),
                    c_valuation: None,
                },
                PAdicShape::Sphere { c_valuation } => JuliaShape {
                    shape: "sphere".into(),
                    c_valuation: Some(c_valuation),
                },
            };
            let capacity = if matches!(
                tri.tag,
                TrichotomyTag::NonemptyFinite | TrichotomyTag::FiniteUnknownNonempty
            ) {
                Some(render_capacity(&capfek::zp_capacity(p), sig))
            } else {
                None
            };
            Some(PAdicSide {
                p,
                tag: tag_string(tri.tag).into(),
                julia,
                witness: tri.witness.map(|w| {
                    match w {
                        PAdicWitness::FixedPoint => "fixed-point",
                        PAdicWitness::TwoCycle => "two-cycle",
                    }
                    .into()
                }),
                cantor_in_qp: tri.cantor_in_qp.then_some(true),
                capacity,
            })
        }
    };
    Ok(Classification {
        totally_real,
        totally_padic,
    })
}

fn capacity_report(c: &BigRational, p: Option<u64>, sig: usize) -> Result<CapacityReport, Failure> {
    let (question, desc) = match p {
        None => (
            "totally-real",
            capfek::adelic_descriptor_totally_real(c).map_err(|e| match e {
                CapfekError::OutOfRange(msg) => out_of_range(msg),
                other => out_of_range(format!("{:?}", other)),
            })?,
        ),
        Some(p) => {
            let ctx = check_p(p)?;
            (
                "totally-p-adic",
                capfek::adelic_descriptor_totally_padic(c, &ctx).map_err(|e| match e {
                    CapfekError::OutOfRange(msg) => out_of_range(msg),
                    other => out_of_range(format!("{:?}", other)),
                })?,
            )
        }
    };
    Ok(CapacityReport {
        question: question.into(),
        archimedean: render_capacity(&desc.archimedean_factor, sig),
        finite_factors: desc
            .finite_factors
            .iter()
            .map(|(p, v)| (*p, render_capacity(v, sig)))
            .collect(),
        product: render_capacity(&desc.capacity(), sig),
    })
}

fn require_model(c: &BigRational) -> Result<ConjugatedModel, Failure> {
    ConjugatedModel::new(c).ok_or_else(|| {
        out_of_range("c > 1/4: the real interval is empty, no conjugated segment exists")
    })
}

fn fekete_report(c: &BigRational, n: usize, sig: usize) -> Result<FeketeReport, Failure> {
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let model = require_model(c)?;
    let s = crate::exact::embed::embedding_f64(&model.s, 0);
    let res = capfek::fekete_points(n, s, &FeketeConfig::default())
        .map_err(|e| out_of_range(format!("{:?}", e)))?;
    Ok(FeketeReport {
        n,
        segment_half_length: render_element(&model.s, sig),
        points: res.points,
        log_product: res.log_product,
        n_diameter: res.n_diameter,
    })
}

fn map_preper_error(e: PreperError) -> Failure {
    match e {
        PreperError::OutsideFiniteRange { tag } => out_of_range(format!(
            "the totally real preperiodic set is {} here; enumeration needs \
             the nonempty-finite range -2 < c <= 1/4",
            tag_string(tag)
        )),
        other => out_of_range(other.to_string()),
    }
}

fn degree_bound_report(
    c: &BigRational,
    n_max: Option<usize>,
    sig: usize,
) -> Result<DegreeBoundReport, Failure> {
    let model = require_model(c)?;
    let n_max = n_max.unwrap_or(PreperOptions::default().n_max);
    let db = capfek::degree_bound(&model.s, n_max, &FeketeConfig::default())
        .map_err(|e| map_preper_error(e.into()))?;
    Ok(DegreeBoundReport {
        segment_half_length: render_element(&model.s, sig),
        n0: db.n0,
        max_degree: db.n0 - 1,
        trace: db
            .trace
            .rows
            .iter()
            .map(|r| TraceRow {
                n: r.n,
                a: r.a,
                b: r.b,
                ln_a: r.ln_a,
                ln_b: r.ln_b,
                a_ratio: r.a_ratio,
                b_ratio: r.b_ratio,
            })
            .collect(),
    })
}

fn preper_report(
    c: &BigRational,
    max_degree: Option<usize>,
    n_max: Option<usize>,
    sig: usize,
) -> Result<PreperReport, Failure> {
    // c > 1/4: the set is genuinely empty; report that, not an error
    if realdyn::classify_totally_real(c).tag == TrichotomyTag::Empty {
        return Ok(PreperReport {
            count: 0,
            max_degree: None,
            candidates: None,
            elements: Vec::new(),
            unresolved: Vec::new(),
            note: Some("empty: c > 1/4 leaves no totally real preperiodic points".into()),
        });
    }
    let mut opts = PreperOptions::default();
    if let Some(d) = max_degree {
        opts.degree_budget = d;
    }
    if let Some(n) = n_max {
        opts.n_max = n;
    }
    let set = preper::totally_real_preper_set(c, &opts).map_err(map_preper_error)?;
    Ok(PreperReport {
        count: set.elements.len(),
        max_degree: Some(set.max_degree),
        candidates: Some(set.candidates),
        elements: set
            .elements
            .iter()
            .map(|e| ElementReport {
                value: render_element(&e.value, sig),
                integral_model: e.integral_model.surd_string(),
                min_poly: poly_string(&e.min_poly),
                min_poly_coeffs: e.min_poly.coeffs().iter().map(|c| c.to_string()).collect(),
                tail: e.tail,
                period: e.period,
            })
            .collect(),
        unresolved: set.unresolved.iter().map(poly_string).collect(),
        note: None,
    })
}

fn verify_report(x_text: &str, c: &BigRational, sig: usize) -> Result<VerifyReport, Failure> {
    let x = parse_surd(x_text).map_err(|e| usage(format!("bad --x literal: {}", e)))?;
    let outcome = preper::verify_preperiodic(&x, c, PreperOptions::default().step_cap)
        .map_err(|e| out_of_range(e.to_string()))?;
    let mut rep = VerifyReport {
        x: render_element(&x, sig),
        status: String::new(),
        tail: None,
        period: None,
        reason: None,
        step: None,
        steps_used: None,
    };
    match outcome {
        OrbitOutcome::Preperiodic { tail, period } => {
            rep.status = "preperiodic".into();
            rep.tail = Some(tail);
            rep.period = Some(period);
        }
        OrbitOutcome::Rejected { reason, step } => {
            rep.status = "rejected".into();
            rep.reason = Some(reason_string(reason).into());
            rep.step = Some(step);
        }
        OrbitOutcome::Unresolved { steps_used } => {
            rep.status = "unresolved".into();
            rep.steps_used = Some(steps_used);
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// text rendering

fn vr(v: &ValueRender) -> String {
    if v.exact == v.decimal {
        v.exact.clone()
    } else {
        format!("{} ~ {}", v.exact, v.decimal)
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    if let Some(c) = &r.inputs.c {
        let _ = writeln!(out, "c = {}", c);
    }
    if let Some(cl) = &r.classification {
        let t = &cl.totally_real;
        let _ = writeln!(out, "totally real: {}", t.tag);
        if let Some(v) = &t.radius {
            let _ = writeln!(out, "  interval radius a_c: {}", vr(v));
        }
        if let Some(v) = &t.capacity {
            let _ = writeln!(out, "  adelic capacity: {}", vr(v));
        }
        if let Some(v) = &t.witness_fixed_point {
            let _ = writeln!(out, "  witness fixed point: {}", vr(v));
        }
        if let Some(pa) = &cl.totally_padic {
            let _ = writeln!(out, "totally {}-adic: {}", pa.p, pa.tag);
            match (&pa.julia.shape[..], pa.julia.c_valuation) {
                ("unit-ball", _) => {
                    let _ = writeln!(out, "  nonarchimedean filled julia set: unit ball");
                }
                (_, Some(v)) => {
                    let _ = writeln!(
                        out,
                        "  nonarchimedean filled julia set: inside the sphere |x|^2 = |c|, v_p(c) = {}",
                        v
                    );
                }
                _ => {}
            }
            if let Some(v) = &pa.capacity {
                let _ = writeln!(out, "  adelic capacity: {}", vr(v));
            }
            if let Some(w) = &pa.witness {
                let _ = writeln!(out, "  witness: {}", w);
            }
            if let Some(cant) = pa.cantor_in_qp {
                let _ = writeln!(out, "  infinite Cantor-type set inside Q_{}: {}", pa.p, cant);
            }
        }
    }
    if let Some(cap) = &r.capacity {
        let _ = writeln!(out, "question: {}", cap.question);
        let _ = writeln!(out, "archimedean factor: {}", vr(&cap.archimedean));
        for (p, v) in &cap.finite_factors {
            let _ = writeln!(out, "factor at {}: {}", p, vr(v));
        }
        let _ = writeln!(out, "adelic capacity: {}", vr(&cap.product));
    }
    if let Some(fk) = &r.fekete {
        let _ = writeln!(
            out,
            "segment: [-s, s], s = {}",
            vr(&fk.segment_half_length)
        );
        let _ = writeln!(out, "n = {}", fk.n);
        let pts: Vec<String> = fk.points.iter().map(|x| format!("{:.12}", x)).collect();
        let _ = writeln!(out, "fekete points: [{}]", pts.join(", "));
        let _ = writeln!(out, "log pairwise product: {:.12}", fk.log_product);
        let _ = writeln!(out, "n-diameter: {:.12}", fk.n_diameter);
    }
    if let Some(db) = &r.degree_bound {
        let _ = writeln!(
            out,
            "segment: [-s, s], s = {}",
            vr(&db.segment_half_length)
        );
        let _ = writeln!(out, "{:>4} {:>18} {:>18}", "n", "a_n", "b_n");
        for row in &db.trace {
            let _ = writeln!(out, "{:>4} {:>18.6} {:>18.6}", row.n, row.a, row.b);
        }
        let _ = writeln!(out, "criterion fires at n0 = {}", db.n0);
        let _ = writeln!(
            out,
            "preperiodic points have degree at most {}",
            db.max_degree
        );
    }
    if let Some(pp) = &r.preper {
        if let Some(note) = &pp.note {
            let _ = writeln!(out, "{}", note);
        }
        if let (Some(d), Some(cand)) = (pp.max_degree, pp.candidates) {
            let _ = writeln!(
                out,
                "degree bound {}; {} candidate polynomials examined",
                d, cand
            );
        }
        let _ = writeln!(out, "elements ({}):", pp.count);
        for e in &pp.elements {
            let _ = writeln!(
                out,
                "  {}  [min poly {}; tail {}, period {}]",
                vr(&e.value),
                e.min_poly,
                e.tail,
                e.period
            );
        }
        for u in &pp.unresolved {
            let _ = writeln!(out, "  unresolved candidate: {}", u);
        }
    }
    if let Some(v) = &r.verify {
        let _ = writeln!(out, "x = {}", vr(&v.x));
        match v.status.as_str() {
            "preperiodic" => {
                let _ = writeln!(
                    out,
                    "preperiodic: tail {}, period {}",
                    v.tail.unwrap_or(0),
                    v.period.unwrap_or(0)
                );
            }
            "rejected" => {
                let _ = writeln!(
                    out,
                    "not preperiodic: {} at step {}",
                    v.reason.as_deref().unwrap_or("?"),
                    v.step.unwrap_or(0)
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "unresolved after {} steps",
                    v.steps_used.unwrap_or(0)
                );
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// entry point

fn digits_from_env() -> usize {
    std::env::var(DIGITS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|d| d.clamp(2, 200))
        .unwrap_or(30)
}

fn build_report(cli: &Cli, sig: usize) -> Result<(Report, Format), Failure> {
    let mut inputs = Inputs {
        c: None,
        p: None,
        x: None,
        n: None,
        n_max: None,
        max_degree: None,
        digits: sig,
    };
    let blank = Report {
        verb: String::new(),
        inputs: inputs.clone(),
        classification: None,
        capacity: None,
        fekete: None,
        degree_bound: None,
        preper: None,
        verify: None,
    };
    match &cli.verb {
        Verb::Classify { c, p, common } => {
            let cq = parse_c(c)?;
            inputs.c = Some(cq.to_string());
            inputs.p = *p;
            let classification = classify_report(&cq, *p, sig)?;
            Ok((
                Report {
                    verb: "classify".into(),
                    inputs,
                    classification: Some(classification),
                    ..blank
                },
                common.format,
            ))
        }
        Verb::Preper {
            c,
            max_degree,
            n_max,
            common,
        } => {
            let cq = parse_c(c)?;
            inputs.c = Some(cq.to_string());
            inputs.max_degree = *max_degree;
            inputs.n_max = *n_max;
            let preper = preper_report(&cq, *max_degree, *n_max, sig)?;
            Ok((
                Report {
                    verb: "preper".into(),
                    inputs,
                    preper: Some(preper),
                    ..blank
                },
                common.format,
            ))
        }
        Verb::Capacity { c, p, common } => {
            let cq = parse_c(c)?;
            inputs.c = Some(cq.to_string());
            inputs.p = *p;
            let capacity = capacity_report(&cq, *p, sig)?;
            Ok((
                Report {
                    verb: "capacity".into(),
                    inputs,
                    capacity: Some(capacity),
                    ..blank
                },
                common.format,
            ))
        }
        Verb::Fekete { c, n, common } => {
            let cq = parse_c(c)?;
            inputs.c = Some(cq.to_string());
            inputs.n = Some(*n);
            let fekete = fekete_report(&cq, *n, sig)?;
            Ok((
                Report {
                    verb: "fekete".into(),
                    inputs,
                    fekete: Some(fekete),
                    ..blank
                },
                common.format,
            ))
        }
        Verb::DegreeBound { c, n_max, common } => {
            let cq = parse_c(c)?;
            inputs.c = Some(cq.to_string());
            inputs.n_max = *n_max;
            let degree_bound = degree_bound_report(&cq, *n_max, sig)?;
            Ok((
                Report {
                    verb: "degree-bound".into(),
                    inputs,
                    degree_bound: Some(degree_bound),
                    ..blank
                },
                common.format,
            ))
        }
        Verb::Verify { x, c, common } => {
            let cq = parse_c(c)?;
            inputs.c = Some(cq.to_string());
            inputs.x = Some(x.clone());
            let verify = verify_report(x, &cq, sig)?;
            Ok((
                Report {
                    verb: "verify".into(),
                    inputs,
                    verify: Some(verify),
                    ..blank
                },
                common.format,
            ))
        }
    }
}

/// Run the CLI on argv (including the program name); returns the exit
/// code. Reports go to stdout, diagnostics and timing to stderr.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version are success paths; real parse errors are usage
            let is_help = !e.use_stderr();
            let _ = e.print();
            return if is_help { 0 } else { 2 };
        }
    };
    let sig = digits_from_env();
    let start = Instant::now();
    match build_report(&cli, sig) {
        Ok((report, format)) => {
            match format {
                Format::Text => print!("{}", render_text(&report)),
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("report serializes")
                    );
                }
            }
            eprintln!("elapsed: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

// quiet the unused-import lint when the Arc only appears in signatures
#[allow(unused)]
fn _arc_marker(_: &Arc<Algebra>) {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::embed::embedding_f64;

    fn report_for(args: &[&str]) -> Result<Report, (i32, String)> {
        let mut argv = vec!["preperiodic".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let cli = Cli::try_parse_from(&argv).map_err(|e| (2, e.to_string()))?;
        build_report(&cli, 30)
            .map(|(r, _)| r)
            .map_err(|f| (f.code, f.message))
    }

    #[test]
    fn surd_parser_round_trips() {
        for text in [
            "1/3",
            "-7/2",
            "0.25",
            "sqrt(2)",
            "-sqrt(2)/2",
            "(1+sqrt(5))/2",
            "(-1-sqrt(5))/2",
            "(3+3*sqrt(2)-2*sqrt(3))/6",
            "1/(2*sqrt(5))",
            "(1+sqrt(5))/(2*sqrt(5))",
            "sqrt(8)",
            "sqrt(4/9)",
            "sqrt(2)*sqrt(3)",
        ] {
            let x = parse_surd(text).unwrap_or_else(|e| panic!("{}: {}", text, e));
            let back = parse_surd(&x.surd_string()).unwrap();
            // canonical string must parse back to the same value
            assert_eq!(
                crate::exact::embed::cmp_embeddings(&x, 0, &back, 0),
                std::cmp::Ordering::Equal,
                "{}",
                text
            );
        }
        // numeric spot checks
        let phi = parse_surd("(1+sqrt(5))/2").unwrap();
        assert!((embedding_f64(&phi, 0) - 1.618033988749895).abs() < 1e-12);
        let v = parse_surd("(1+sqrt(5))/(2*sqrt(5))").unwrap();
        assert!((embedding_f64(&v, 0) - 0.7236067977).abs() < 1e-9);
        let w = parse_surd("sqrt(8)").unwrap();
        assert_eq!(w.surd_string(), "2*sqrt(2)");
        assert!(parse_surd("sqrt(sqrt(2))").is_err());
        assert!(parse_surd("1/0").is_err());
        assert!(parse_surd("2 +").is_err());
        // three independent radicands exceed the algebra support
        assert!(parse_surd("sqrt(2)+sqrt(3)+sqrt(5)").is_err());
        // ... but a third radicand generated by the other two is fine
        assert!(parse_surd("sqrt(2)+sqrt(3)+sqrt(6)").is_ok());
    }

    #[test]
    fn classify_reports() {
        let r = report_for(&["classify", "--c", "-1", "--p", "3"]).unwrap();
        let cl = r.classification.unwrap();
        assert_eq!(cl.totally_real.tag, "nonempty-finite");
        let real = cl.totally_real;
        assert_eq!(real.radius.unwrap().exact, "(1+sqrt(5))/2");
        assert_eq!(real.capacity.as_ref().unwrap().exact, "(1+sqrt(5))/4");
        let pa = cl.totally_padic.unwrap();
        assert_eq!(pa.tag, "nonempty-finite");
        assert_eq!(pa.julia.shape, "unit-ball");
        assert_eq!(pa.capacity.unwrap().exact, "3^(-1/2)");

        let r = report_for(&["classify", "--c", "1/2"]).unwrap();
        assert_eq!(r.classification.unwrap().totally_real.tag, "empty");

        let r = report_for(&["classify", "--c", "-2"]).unwrap();
        assert_eq!(r.classification.unwrap().totally_real.tag, "infinite");
    }

    #[test]
    fn exit_code_paths() {
        // p = 2 is a mathematical restriction: 3
        assert_eq!(report_for(&["classify", "--c", "-1", "--p", "2"]).unwrap_err().0, 3);
        // p = 9 is a usage error: 2
        assert_eq!(report_for(&["classify", "--c", "-1", "--p", "9"]).unwrap_err().0, 2);
        // malformed rational: 2
        assert_eq!(report_for(&["classify", "--c", "x"]).unwrap_err().0, 2);
        assert_eq!(report_for(&["classify", "--c", "1/0"]).unwrap_err().0, 2);
        // infinite set: 3
        assert_eq!(report_for(&["preper", "--c", "-2"]).unwrap_err().0, 3);
        // supercritical segment: 3
        assert_eq!(report_for(&["preper", "--c", "1/7"]).unwrap_err().0, 3);
        // capacity of an empty real set: 3
        assert_eq!(report_for(&["capacity", "--c", "1"]).unwrap_err().0, 3);
        // |c|_p > 1 capacity: 3
        assert_eq!(
            report_for(&["capacity", "--c", "1/5", "--p", "5"]).unwrap_err().0,
            3
        );
        // fekete with n < 2: 2
        assert_eq!(report_for(&["fekete", "--c", "-1", "--n", "1"]).unwrap_err().0, 2);
        // bad surd literal: 2
        assert_eq!(
            report_for(&["verify", "--x", "oops", "--c", "-1"]).unwrap_err().0,
            2
        );
    }

    #[test]
    fn preper_empty_range_is_success() {
        let r = report_for(&["preper", "--c", "1/2"]).unwrap();
        let pp = r.preper.unwrap();
        assert_eq!(pp.count, 0);
        assert!(pp.elements.is_empty());
        assert!(pp.note.is_some());
    }

    #[test]
    fn preper_report_for_quarter() {
        let r = report_for(&["preper", "--c", "1/4"]).unwrap();
        let pp = r.preper.unwrap();
        assert_eq!(pp.count, 2);
        let exacts: Vec<&str> = pp.elements.iter().map(|e| e.value.exact.as_str()).collect();
        assert_eq!(exacts, ["-1/2", "1/2"]);
        assert_eq!(pp.elements[0].min_poly, "2*t + 1");
    }

    #[test]
    fn verify_reports() {
        let r = report_for(&["verify", "--x", "(1+sqrt(5))/2", "--c", "-1"]).unwrap();
        let v = r.verify.unwrap();
        assert_eq!(v.status, "preperiodic");
        assert_eq!((v.tail, v.period), (Some(0), Some(1)));

        let r = report_for(&["verify", "--x", "1/3", "--c", "-1"]).unwrap();
        let v = r.verify.unwrap();
        assert_eq!(v.status, "rejected");
        assert_eq!(v.reason.as_deref(), Some("p-adic-escape"));
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let r1 = report_for(&["classify", "--c", "-1", "--p", "7"]).unwrap();
        let r2 = report_for(&["classify", "--c", "-1", "--p", "7"]).unwrap();
        let j1 = serde_json::to_string_pretty(&r1).unwrap();
        let j2 = serde_json::to_string_pretty(&r2).unwrap();
        assert_eq!(j1, j2, "byte-identical for identical inputs");
        let back: Report = serde_json::from_str(&j1).unwrap();
        assert_eq!(back, r1, "round-trips through json");

        let r = report_for(&["preper", "--c", "1/5"]).unwrap();
        let j = serde_json::to_string_pretty(&r).unwrap();
        let back: Report = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn degree_bound_text_mentions_n0() {
        let r = report_for(&["degree-bound", "--c", "0"]).unwrap();
        let db = r.degree_bound.clone().unwrap();
        assert_eq!(db.n0, 3);
        assert_eq!(db.max_degree, 2);
        let text = render_text(&r);
        assert!(text.contains("criterion fires at n0 = 3"), "{}", text);
    }

    #[test]
    fn capacity_exact_strings() {
        let r = report_for(&["capacity", "--c", "-1"]).unwrap();
        let cap = r.capacity.unwrap();
        assert_eq!(cap.product.exact, "(1+sqrt(5))/4");
        assert_eq!(&cap.product.decimal[..12], "0.8090169943");

        let r = report_for(&["capacity", "--c", "-1", "--p", "3"]).unwrap();
        let cap = r.capacity.unwrap();
        assert_eq!(cap.archimedean.exact, "1");
        assert_eq!(cap.product.exact, "3^(-1/2)");
        assert_eq!(cap.product.decimal, "0.577350269189625764509148780502");
    }

    #[test]
    fn poly_strings() {
        let p = IntPolynomial::from_i64s(&[-1, -1, 1]);
        assert_eq!(poly_string(&p), "t^2 - t - 1");
        let p = IntPolynomial::from_i64s(&[1, -5, 5]);
        assert_eq!(poly_string(&p), "5*t^2 - 5*t + 1");
        let p = IntPolynomial::from_i64s(&[0, 1]);
        assert_eq!(poly_string(&p), "t");
        let p = IntPolynomial::from_i64s(&[2, 1]);
        assert_eq!(poly_string(&p), "t + 2");
    }
}
