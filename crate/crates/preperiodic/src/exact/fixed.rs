//! Fixed-point decimal arithmetic over BigInt, for high-precision decimal
//! renderings (30+ significant digits) of surds, capacities, and prime
//! powers. Everything reduces to integer sqrt / k-th root extraction on
//! scaled integers, so results are deterministic and within one unit in
//! the last working digit; callers render with guard digits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// value = mant * 10^(-scale)
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    pub mant: BigInt,
    pub scale: u32,
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

impl Fixed {
    /// Nearest fixed-point value to the rational q (ties round away from 0).
    pub fn from_rational(q: &BigRational, scale: u32) -> Fixed {
        let num = q.numer() * pow10(scale);
        let den = q.denom();
        let twice = BigInt::from(2) * &num + den * BigInt::from(num.is_negative() as i8 * -2 + 1);
        // twice = 2*num + sign(num)*den, so twice/(2 den) rounds to nearest
        let mant = twice / (BigInt::from(2) * den);
        Fixed { mant, scale }
    }

    /// floor(sqrt(q) * 10^scale) for q >= 0, within 1 ulp.
    pub fn sqrt_rational(q: &BigRational, scale: u32) -> Fixed {
        assert!(!q.is_negative(), "sqrt of a negative rational");
        let scaled = (q.numer() * pow10(2 * scale)) / q.denom();
        Fixed {
            mant: scaled.sqrt(),
            scale,
        }
    }

    /// floor(q^(1/k) * 10^scale) for q >= 0, within 1 ulp.
    pub fn kth_root_rational(q: &BigRational, k: u32, scale: u32) -> Fixed {
        assert!(!q.is_negative() && k >= 1);
        let scaled = (q.numer() * pow10(k * scale)) / q.denom();
        Fixed {
            mant: scaled.nth_root(k),
            scale,
        }
    }

    /// Reciprocal at the same scale (value must be positive).
    pub fn recip(&self) -> Fixed {
        assert!(self.mant.is_positive(), "reciprocal needs a positive value");
        let num = pow10(2 * self.scale);
        let half = &self.mant / BigInt::from(2);
        Fixed {
            mant: (num + half) / &self.mant,
            scale: self.scale,
        }
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.scale, other.scale, "mixed fixed-point scales");
        Fixed {
            mant: &self.mant + &other.mant,
            scale: self.scale,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Fixed {
        let num = &self.mant * q.numer();
        let den = q.denom();
        let half = den / BigInt::from(2) * num.signum();
        Fixed {
            mant: (num + half) / den,
            scale: self.scale,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), pow10(self.scale))
    }

    pub fn to_f64(&self) -> f64 {
        // split so huge mantissas stay in range
        let q = self.to_rational();
        q.to_f64().unwrap_or(f64::NAN)
    }

    /// Render with exactly `sig` significant digits (round half away from
    /// zero on the digit after). The working scale should exceed `sig` by
    /// several guard digits; otherwise trailing digits are padding zeros.
    pub fn render_sig(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.mant.is_zero() {
            return format!("0.{}", "0".repeat(sig - 1));
        }
        let neg = self.mant.is_negative();
        let digits = self.mant.abs().to_string();
        let len = digits.len();
        // value = 0.digits * 10^exp10
        let mut exp10 = len as i64 - self.scale as i64;
        let mut rounded: Vec<u8> = if len <= sig {
            let mut v = digits.into_bytes();
            v.resize(sig, b'0');
            v
        } else {
            let mut v: Vec<u8> = digits.as_bytes()[..sig].to_vec();
            if digits.as_bytes()[sig] >= b'5' {
                let mut i = sig;
                loop {
                    if i == 0 {
                        v.insert(0, b'1');
                        v.pop();
                        exp10 += 1;
                        break;
                    }
                    i -= 1;
                    if v[i] == b'9' {
                        v[i] = b'0';
                    } else {
                        v[i] += 1;
                        break;
                    }
                }
            }
            v
        };
        let body = if exp10 >= 1 && exp10 <= sig as i64 {
            let e = exp10 as usize;
            if e == sig {
                String::from_utf8(rounded).unwrap()
            } else {
                let frac = rounded.split_off(e);
                format!(
                    "{}.{}",
                    String::from_utf8(rounded).unwrap(),
                    String::from_utf8(frac).unwrap()
                )
            }
        } else if exp10 <= 0 && exp10 >= -4 {
            format!(
                "0.{}{}",
                "0".repeat((-exp10) as usize),
                String::from_utf8(rounded).unwrap()
            )
        } else {
            // fall back to scientific notation for extreme magnitudes
            let head = rounded.remove(0);
            format!(
                "{}.{}e{}",
                head as char,
                String::from_utf8(rounded).unwrap(),
                exp10 - 1
            )
        };
        if neg {
            format!("-{}", body)
        } else {
            body
        }
    }
}

/// Decimal rendering of u + v*sqrt(n) with `sig` significant digits.
pub fn render_surd_decimal(
    u: &BigRational,
    v: &BigRational,
    n: &BigInt,
    sig: usize,
) -> String {
    let work = sig as u32 + 12;
    let root = Fixed::sqrt_rational(&BigRational::from_integer(n.clone()), work);
    let total = Fixed::from_rational(u, work).add(&root.mul_rational(v));
    total.render_sig(sig)
}
