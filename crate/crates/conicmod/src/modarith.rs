//! Exact modular arithmetic over F_p and the quadratic extension F_p(√d).
//!
//! All products go through u128 intermediates, so moduli up to 2^61 are safe.

use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible modulus.
pub const MAX_MODULUS: u64 = 1 << 61;

/// A prime modulus, validated at construction.
///
/// p = 2 is representable but rejected by operations documented as odd-only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn require_odd(self) -> Result<()> {
        if self.0 == 2 {
            Err(Error::EvenModulus)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// (a * b) mod p without overflow.
#[inline]
pub fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// (a + b) mod p without overflow.
#[inline]
pub fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

/// base^exp mod p by square-and-multiply; exp = 0 returns 1.
pub fn mod_pow(base: u64, exp: u64, p: PrimeModulus) -> u64 {
    let p = p.get();
    if p == 1 {
        return 0;
    }
    let mut base = base % p;
    let mut exp = exp;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into [0, p).
#[inline]
pub fn reduce_signed(x: i64, p: u64) -> u64 {
    (x as i128).rem_euclid(p as i128) as u64
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b).
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of x modulo p; errors when x ≡ 0 (mod p).
pub fn mod_inv(x: u64, p: PrimeModulus) -> Result<u64> {
    let pp = p.get();
    let x = x % pp;
    if x == 0 {
        return Err(Error::NotInvertible);
    }
    let (_, inv, _) = extended_gcd(x as i128, pp as i128);
    Ok(inv.rem_euclid(pp as i128) as u64)
}

/// Deterministic Miller-Rabin primality test, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // This base set is exact for every n < 2^64.
    'witness: for &w in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = {
            // mod_pow without the PrimeModulus wrapper: n may be composite here.
            let mut base = w % n;
            let mut exp = d;
            let mut acc = 1u64;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = mod_mul(acc, base, n);
                }
                base = mod_mul(base, base, n);
                exp >>= 1;
            }
            acc
        };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Ascending list of primes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Element u + v·√d of F_p[t]/(t² − d).
///
/// d may be a residue mod p, in which case the ring is not a field; every
/// operation here stays well-defined either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2Elem {
    pub u: u64,
    pub v: u64,
    pub d: u64,
    pub p: PrimeModulus,
}

impl Fp2Elem {
    pub fn new(u: u64, v: u64, d: u64, p: PrimeModulus) -> Self {
        let m = p.get();
        Fp2Elem {
            u: u % m,
            v: v % m,
            d: d % m,
            p,
        }
    }

    /// The multiplicative identity 1 + 0·√d.
    pub fn one(d: u64, p: PrimeModulus) -> Self {
        Fp2Elem::new(1, 0, d, p)
    }

    pub fn is_one(&self) -> bool {
        self.u == 1 % self.p.get() && self.v == 0
    }

    /// Conjugate u − v·√d.
    pub fn conj(&self) -> Self {
        let m = self.p.get();
        Fp2Elem {
            u: self.u,
            v: (m - self.v) % m,
            d: self.d,
            p: self.p,
        }
    }

    /// (u₁+v₁√d)(u₂+v₂√d) = (u₁u₂+v₁v₂d) + (u₁v₂+u₂v₁)√d, reduced mod p.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.p != rhs.p || self.d != rhs.d {
            return Err(Error::BasisMismatch);
        }
        let m = self.p.get();
        let u = mod_add(
            mod_mul(self.u, rhs.u, m),
            mod_mul(mod_mul(self.v, rhs.v, m), self.d, m),
            m,
        );
        let v = mod_add(mod_mul(self.u, rhs.v, m), mod_mul(rhs.u, self.v, m), m);
        Ok(Fp2Elem {
            u,
            v,
            d: self.d,
            p: self.p,
        })
    }

    /// Repeated multiplication by square-and-multiply; exp = 0 gives 1.
    pub fn pow(&self, exp: u64) -> Self {
        let mut acc = Fp2Elem::one(self.d, self.p);
        let mut base = *self;
        let mut exp = exp;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same basis");
            }
            base = base.mul(&base).expect("same basis");
            exp >>= 1;
        }
        acc
    }
}
