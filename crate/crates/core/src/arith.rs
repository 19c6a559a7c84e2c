//! Integer helpers: trial-division factorization and the arithmetic
//! functions built on it.

use crate::error::{Error, Result};

/// Largest integer we are willing to factor by trial division.
pub const FACTOR_CAP: u128 = 1 << 63;

/// Prime factorization `(prime, exponent)` in increasing prime order.
pub fn factor(n: u128) -> Result<Vec<(u128, u32)>> {
    if n > FACTOR_CAP {
        return Err(Error::FactorizationCap(n));
    }
    let mut out = Vec::new();
    let mut n = n;
    if n < 2 {
        return Ok(out);
    }
    for p in [2u128, 3] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    // 6k +- 1 wheel
    let mut d = 5u128;
    while d * d <= n {
        for p in [d, d + 2] {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        d += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn prime_divisors(n: u128) -> Result<Vec<u128>> {
    Ok(factor(n)?.into_iter().map(|(p, _)| p).collect())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    matches!(factor(n as u128).as_deref(), Ok([(_, 1)]))
}

/// Splits `q = p^r`, or fails if `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    match factor(q as u128)?.as_slice() {
        [(p, r)] => Ok((*p as u64, *r)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

pub fn euler_phi(n: u64) -> Result<u64> {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    let mut phi = n;
    for (p, _) in factor(n as u128)? {
        let p = p as u64;
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

pub fn moebius(n: u64) -> Result<i8> {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let f = factor(n as u128)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// Least `k` dividing `bound` with `is_identity(k)`, given `is_identity(bound)`.
///
/// Walks down through the prime factors of `bound`.
pub fn order_descent(bound: u128, mut is_identity: impl FnMut(u128) -> bool) -> Result<u128> {
    let mut order = bound;
    for (p, e) in factor(bound)? {
        for _ in 0..e {
            if is_identity(order / p) {
                order /= p;
            } else {
                break;
            }
        }
    }
    Ok(order)
}
