//! Small number-theory helpers: primality, Pollard rho, squarefree
//! decomposition of big integers (needed to canonicalize surds).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic Miller-Rabin for u64 (the first twelve prime bases decide
/// primality for everything below 3.3 * 10^24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime_big(n: &BigInt) -> bool {
    if let Some(u) = n.to_u64() {
        return is_prime_u64(u);
    }
    // Miller-Rabin with fixed bases; beyond u64 this is probabilistic but
    // the inputs reaching it (radicands of user-supplied rationals) make a
    // false positive irrelevant in practice.
    let one = BigInt::one();
    let two = BigInt::from(2);
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0u32;
    while d.is_even() {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 0..r.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent rho: one nontrivial factor of an odd composite n.
fn rho_factor(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        let f = |v: &BigInt| (v * v + &c) % n;
        let mut steps = 0u64;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break; // cycle without factor; retry with another offset
            }
            d = diff.gcd(n);
            steps += 1;
            if steps > 1 << 22 {
                break;
            }
        }
        if d != one && &d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(mut n: BigInt, out: &mut Vec<BigInt>) {
    // Strip small primes first so rho only sees odd leftovers: the
    // x^2 + c iteration collapses mod powers of two without ever
    // yielding a factor, so feeding rho an even n can spin forever.
    let mut p = 2u64;
    while p < 20_000 {
        let pb = BigInt::from(p);
        if (&pb * &pb) > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            out.push(pb.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return;
    }
    if is_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = rho_factor(&n);
    let q = &n / &d;
    factor_into(d, out);
    factor_into(q, out);
}

/// The distinct primes dividing n > 0, ascending.
pub fn distinct_prime_factors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive());
    let mut out = Vec::new();
    factor_into(n.clone(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Write n > 0 as k^2 * m with m squarefree: returns (k, m).
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_decompose needs n > 0");
    let mut rest = n.clone();
    let mut k = BigInt::one();
    let mut m = BigInt::one();
    // strip small primes first; rho only sees what is left
    let mut p = 2u64;
    while p < 20_000 && rest > BigInt::one() {
        let pb = BigInt::from(p);
        if (&pb * &pb) > rest {
            break; // rest is prime or 1; handled below
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            k *= pb.pow(e / 2);
            if e % 2 == 1 {
                m *= BigInt::from(p);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        // cheap wins before full factorization: prime, or perfect square
        if is_prime_big(&rest) {
            m *= rest;
        } else {
            let r = rest.sqrt();
            if &r * &r == rest {
                k *= r;
            } else {
                let mut primes = Vec::new();
                factor_into(rest, &mut primes);
                primes.sort();
                let mut i = 0;
                while i < primes.len() {
                    let mut e = 1;
                    while i + e < primes.len() && primes[i + e] == primes[i] {
                        e += 1;
                    }
                    k *= primes[i].pow(e as u32 / 2);
                    if e % 2 == 1 {
                        m *= &primes[i];
                    }
                    i += e;
                }
            }
        }
    }
    (k, m)
}
