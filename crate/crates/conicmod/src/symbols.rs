//! Legendre, Jacobi, and Kronecker symbols, exact over machine integers.
//!
//! The Kronecker symbol is total: every integer pair (a, n) has a value,
//! with (a/0) = 1 iff a = ±1 and (a/−1) = +1 for a ≥ 0, −1 for a < 0.

use crate::error::{Error, Result};
use crate::modarith::{gcd, mod_pow, reduce_signed, PrimeModulus};

/// Legendre symbol (a/p) for odd prime p, via the Euler criterion.
pub fn legendre(a: i64, p: PrimeModulus) -> Result<i32> {
    p.require_odd()?;
    let q = p.get();
    let r = reduce_signed(a, q);
    if r == 0 {
        return Ok(0);
    }
    let e = mod_pow(r, (q - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Jacobi symbol (a/n) for odd positive n; jacobi(a, 1) = 1.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenArgument);
    }
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Kronecker symbol (a/n), total over all integer pairs.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = 1i32;
    let mut n = n;
    if n < 0 {
        if a < 0 {
            sign = -sign;
        }
        n = -n;
    }
    let mut e = 0u32;
    let mut m = n as u64;
    while m % 2 == 0 {
        m /= 2;
        e += 1;
    }
    if e > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) per the standard second-supplement rule.
        let two = match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => unreachable!("a is odd"),
        };
        if e % 2 == 1 {
            sign *= two;
        }
    }
    sign * jacobi(a, m).expect("m is odd and positive")
}

/// Periodicity modulus of p ↦ (a/p)_K: |a| for a ≡ 1 (mod 4), 4|a| for
/// a ≡ 2, 3 (mod 4); a ≡ 0 (mod 4) is not covered.
pub fn kronecker_period(a: i64) -> Result<u64> {
    match a.rem_euclid(4) {
        1 => Ok(a.unsigned_abs()),
        2 | 3 => Ok(4 * a.unsigned_abs()),
        _ => Err(Error::UnsupportedCongruenceClass),
    }
}

/// gcd over signed arguments, nonnegative result.
pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}
