//! Small integer helpers shared across modules.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

pub(crate) fn big_pow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Least non-negative residue of `a * b` modulo `m`.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Multiplicative order of `q` modulo `n` (`gcd(q, n) = 1`, `n >= 1`).
#[cfg(test)]
pub(crate) fn mult_order(q: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    let mut k = 1u32;
    while x != 1 {
        x = mul_mod(x, q, n);
        k += 1;
    }
    k
}

/// Base-`q` digits of `x`, least significant first, padded to `m` digits.
pub(crate) fn digits(mut x: u128, q: u64, m: u32) -> Vec<u64> {
    let q = q as u128;
    (0..m)
        .map(|_| {
            let d = (x % q) as u64;
            x /= q;
            d
        })
        .collect()
}
