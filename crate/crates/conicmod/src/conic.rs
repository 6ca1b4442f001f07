//! Solution counting for y² ≡ ax² + 1 over F_p: brute-force enumeration,
//! the closed formula N(p) = p − (a/p), the character-sum expression,
//! the S-sum, the general two-coefficient reduction, the elliptic-curve
//! character sum, and conductor/level.

use crate::error::{Error, Result};
use crate::modarith::{mod_add, mod_mul, primes_up_to, reduce_signed, PrimeModulus};
use crate::parallel::map_collect;
use crate::symbols::{kronecker, legendre};

/// Enumeration is capped here so the oracle stays obviously correct.
pub const ORACLE_PRIME_LIMIT: u64 = 10_000;

/// Largest modulus accepted by the elliptic character sum.
pub const ELLIPTIC_PRIME_LIMIT: u64 = 1_000_000;

/// The curve y² ≡ ax² + 1 (mod p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    a: i64,
    p: PrimeModulus,
}

impl Curve {
    pub fn new(a: i64, p: PrimeModulus) -> Result<Self> {
        if a == 0 || a.unsigned_abs() > 1 << 31 {
            return Err(Error::InvalidCoefficient);
        }
        Ok(Curve { a, p })
    }

    #[inline]
    pub fn a(&self) -> i64 {
        self.a
    }

    #[inline]
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    /// a reduced into [0, p).
    #[inline]
    pub fn a_mod_p(&self) -> u64 {
        reduce_signed(self.a, self.p.get())
    }

    /// ax² + 1 mod p.
    #[inline]
    pub fn rhs(&self, x: u64) -> u64 {
        let q = self.p.get();
        mod_add(mod_mul(self.a_mod_p(), mod_mul(x, x, q), q), 1, q)
    }
}

/// The general curve m₁x₁² + m₂x₂² ≡ n (mod p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralConic {
    pub m1: i64,
    pub m2: i64,
    pub n: i64,
    pub p: PrimeModulus,
}

/// Solution count N(p) together with its defect b(p) = p − N(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub n: u64,
    pub b: i64,
}

impl CountResult {
    fn from_count(n: u64, p: u64) -> Self {
        CountResult {
            n,
            b: p as i64 - n as i64,
        }
    }
}

/// All solutions (x, y) ∈ [0,p)² in lexicographic order.
///
/// Builds the full table of squares mod p, so the listing is a direct
/// transcription of the definition.
pub fn enumerate_solutions(c: &Curve) -> Result<Vec<(u64, u64)>> {
    let q = c.p().get();
    c.p().require_odd()?;
    if q > ORACLE_PRIME_LIMIT {
        return Err(Error::OracleScaleExceeded);
    }
    let mut roots: Vec<Vec<u64>> = vec![Vec::new(); q as usize];
    for y in 0..q {
        roots[mod_mul(y, y, q) as usize].push(y);
    }
    let mut out = Vec::new();
    for x in 0..q {
        for &y in &roots[c.rhs(x) as usize] {
            out.push((x, y));
        }
    }
    Ok(out)
}

/// N(p) = p − (a/p) when gcd(a, p) = 1, N(p) = 2p when p | a.
pub fn count_formula(c: &Curve) -> Result<CountResult> {
    c.p().require_odd()?;
    let q = c.p().get();
    if c.a_mod_p() == 0 {
        return Ok(CountResult::from_count(2 * q, q));
    }
    let sym = legendre(c.a(), c.p())? as i64;
    Ok(CountResult::from_count((q as i64 - sym) as u64, q))
}

/// N(p) = p − (−m₁m₂/p) for m₁m₂n ≢ 0 (mod p).
pub fn count_general(g: &GeneralConic) -> Result<CountResult> {
    g.p.require_odd()?;
    let q = g.p.get() as i128;
    let product = g.m1 as i128 * g.m2 as i128 * g.n as i128;
    if product.rem_euclid(q) == 0 {
        return Err(Error::DegenerateCoefficient);
    }
    let arg = (-(g.m1 as i128) * g.m2 as i128).rem_euclid(q) as i64;
    let sym = legendre(arg, g.p)? as i64;
    Ok(CountResult::from_count(
        (g.p.get() as i64 - sym) as u64,
        g.p.get(),
    ))
}

/// N(p) = p + Σ_{x=0}^{p−1} (ax²+1 / p).
pub fn char_sum_count(c: &Curve) -> Result<CountResult> {
    c.p().require_odd()?;
    let q = c.p().get();
    let mut sum = 0i64;
    for x in 0..q {
        sum += legendre(c.rhs(x) as i64, c.p())? as i64;
    }
    Ok(CountResult::from_count((q as i64 + sum) as u64, q))
}

/// S = Σ_{b=0}^{p−1} (b(b−n)/p); equals −1 for every n ≢ 0 (mod p).
pub fn s_sum(n: i64, p: PrimeModulus) -> Result<i64> {
    p.require_odd()?;
    let q = p.get();
    let n = reduce_signed(n, q);
    if n == 0 {
        return Err(Error::DegenerateCoefficient);
    }
    let mut sum = 0i64;
    for b in 0..q {
        let arg = mod_mul(b, (b + q - n) % q, q);
        sum += legendre(arg as i64, p)? as i64;
    }
    Ok(sum)
}

/// b(p) = −Σ_{x=0}^{p−1} (x³+k₂x²+k₁x+k₀ / p) for the elliptic curve
/// y² ≡ x³+k₂x²+k₁x+k₀.
pub fn elliptic_b(k2: i64, k1: i64, k0: i64, p: PrimeModulus) -> Result<i64> {
    p.require_odd()?;
    let q = p.get();
    if q > ELLIPTIC_PRIME_LIMIT {
        return Err(Error::OracleScaleExceeded);
    }
    let (k2, k1, k0) = (reduce_signed(k2, q), reduce_signed(k1, q), reduce_signed(k0, q));
    let mut sum = 0i64;
    for x in 0..q {
        let x2 = mod_mul(x, x, q);
        let mut t = mod_mul(x2, x, q);
        t = mod_add(t, mod_mul(k2, x2, q), q);
        t = mod_add(t, mod_mul(k1, x, q), q);
        t = mod_add(t, k0, q);
        sum += legendre(t as i64, p)? as i64;
    }
    Ok(-sum)
}

/// Conductor analogue N_C: |a| for a ≡ 1 (mod 4), 4|a| for a ≡ 2, 3 (mod 4).
pub fn conductor(a: i64) -> Result<u64> {
    match a.rem_euclid(4) {
        1 => Ok(a.unsigned_abs()),
        2 | 3 => Ok(4 * a.unsigned_abs()),
        _ => Err(Error::UnsupportedCongruenceClass),
    }
}

/// Level analogue N_L, defined only for a ≡ 1, 3 (mod 4); equals the
/// conductor on those classes.
pub fn level(a: i64) -> Result<u64> {
    match a.rem_euclid(4) {
        1 => Ok(a.unsigned_abs()),
        3 => Ok(4 * a.unsigned_abs()),
        _ => Err(Error::UnsupportedCongruenceClass),
    }
}

/// One row of a prime scan: p, N(p), b(p), and (a/p)_K.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRow {
    pub p: u64,
    pub n: u64,
    pub b: i64,
    pub symbol: i32,
}

fn scan_row(a: i64, q: u64) -> Result<ScanRow> {
    let p = PrimeModulus::new(q)?;
    let count = count_formula(&Curve::new(a, p)?)?;
    Ok(ScanRow {
        p: q,
        n: count.n,
        b: count.b,
        symbol: kronecker(a, q as i64),
    })
}

/// One row per odd prime p ≤ p_max, in ascending order.
pub fn scan_rows(a: i64, p_max: u64) -> Result<Vec<ScanRow>> {
    let primes: Vec<u64> = primes_up_to(p_max).into_iter().filter(|&q| q > 2).collect();
    map_collect(primes, |q| scan_row(a, q))
        .into_iter()
        .collect()
}

/// Sequential variant of [`scan_rows`], kept for benchmark comparison.
pub fn scan_rows_seq(a: i64, p_max: u64) -> Result<Vec<ScanRow>> {
    primes_up_to(p_max)
        .into_iter()
        .filter(|&q| q > 2)
        .map(|q| scan_row(a, q))
        .collect()
}

fn curve_consistent(a: i64, q: u64) -> Result<bool> {
    let p = PrimeModulus::new(q)?;
    let c = Curve::new(a, p)?;
    let brute = enumerate_solutions(&c)?.len() as u64;
    if reduce_signed(a, q) == 0 {
        return Ok(brute == 2 * q);
    }
    let formula = count_formula(&c)?;
    let char_sum = char_sum_count(&c)?;
    Ok(brute == formula.n && formula == char_sum)
}

/// Cross-check all three counting routes over a grid of curves; true iff
/// every cell agrees (the degenerate p | a cells must yield exactly 2p).
pub fn consistency_sweep(a_lo: i64, a_hi: i64, p_max: u64) -> Result<bool> {
    let mut cells = Vec::new();
    for q in primes_up_to(p_max).into_iter().filter(|&q| q > 2) {
        for a in a_lo..=a_hi {
            if a != 0 {
                cells.push((a, q));
            }
        }
    }
    let results = map_collect(cells, |(a, q)| curve_consistent(a, q));
    let mut ok = true;
    for r in results {
        ok &= r?;
    }
    Ok(ok)
}

/// Sequential variant of [`consistency_sweep`], kept for benchmark comparison.
pub fn consistency_sweep_seq(a_lo: i64, a_hi: i64, p_max: u64) -> Result<bool> {
    for q in primes_up_to(p_max).into_iter().filter(|&q| q > 2) {
        for a in a_lo..=a_hi {
            if a != 0 && !curve_consistent(a, q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
