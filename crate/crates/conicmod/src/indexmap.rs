//! The bijection between odd n ∈ {1, 3, …, ǎ, …, 2a−1} (a itself excluded)
//! and m ∈ {1, …, a−1} through n = 4m − a(2ℓ−1), built from the extended-gcd
//! solution of 1 = 4X + aY.

use crate::error::{Error, Result};
use crate::modarith::extended_gcd;

/// A solved instance of n = 4m − a(2ℓ−1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexTriple {
    pub n: u64,
    pub m: u64,
    pub ell: u64,
    pub a: u64,
}

fn check_a(a: u64) -> Result<()> {
    if a < 3 || a % 2 == 0 {
        return Err(Error::OutOfRange);
    }
    Ok(())
}

/// Integers (X₀, Y₀) with 4·X₀ + a·Y₀ = 1; Y₀ is odd because a is odd.
pub fn solve_unit(a: u64) -> Result<(i64, i64)> {
    check_a(a)?;
    let (g, x0, y0) = extended_gcd(4, a as i128);
    debug_assert_eq!(g, 1);
    debug_assert_eq!(y0.rem_euclid(2), 1);
    Ok((x0 as i64, y0 as i64))
}

/// Map an admissible n to its unique (m, ℓ) with m ∈ [1, a−1].
pub fn n_to_m(n: u64, a: u64) -> Result<IndexTriple> {
    check_a(a)?;
    if n == a {
        return Err(Error::ExcludedValue);
    }
    if n % 2 == 0 || n < 1 || n > 2 * a - 1 {
        return Err(Error::OutOfRange);
    }
    let (x0, y0) = solve_unit(a)?;
    let m0 = n as i128 * x0 as i128;
    let ell0 = (1 - n as i128 * y0 as i128) / 2;
    // Canonicalizing shift: m = m0 + ka lands in [1, a−1].
    let m = m0.rem_euclid(a as i128);
    debug_assert_ne!(m, 0, "m = 0 only at the excluded n = a");
    let k = (m - m0) / a as i128;
    let ell = ell0 + 2 * k;
    debug_assert_eq!(4 * m - a as i128 * (2 * ell - 1), n as i128);
    Ok(IndexTriple {
        n,
        m: m as u64,
        ell: ell as u64,
        a,
    })
}

/// Map m ∈ [1, a−1] to the unique ℓ placing n = 4m − a(2ℓ−1) in [1, 2a−1].
pub fn m_to_n(m: u64, a: u64) -> Result<IndexTriple> {
    check_a(a)?;
    if m < 1 || m > a - 1 {
        return Err(Error::OutOfRange);
    }
    // n = 4m + a − 2aℓ; floor division picks the unique ℓ.
    let t = 4 * m + a;
    let ell = (t - 1) / (2 * a);
    let n = t - 2 * a * ell;
    Ok(IndexTriple { n, m, ell, a })
}

/// The full table for odd a, ordered by m (as in the worked a = 11 example).
pub fn index_table(a: u64) -> Result<Vec<IndexTriple>> {
    check_a(a)?;
    (1..a).map(|m| m_to_n(m, a)).collect()
}

/// True iff m ↦ n hits each admissible n exactly once and n ↦ m inverts it.
pub fn verify_bijection(a: u64) -> Result<bool> {
    check_a(a)?;
    if a > 10_000 {
        return Err(Error::OracleScaleExceeded);
    }
    let mut hit = vec![false; 2 * a as usize];
    for triple in index_table(a)? {
        let n = triple.n;
        if n == a || n % 2 == 0 || n > 2 * a - 1 || hit[n as usize] {
            return Ok(false);
        }
        hit[n as usize] = true;
        if n_to_m(n, a)? != triple {
            return Ok(false);
        }
    }
    // a−1 distinct odd values below 2a with a excluded: all admissible n hit.
    Ok(hit.iter().filter(|&&h| h).count() == (a - 1) as usize)
}
