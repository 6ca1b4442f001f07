//! The conic group: addition law (x₁y₂+y₁x₂, y₁y₂+ax₁x₂), scalar
//! multiplication, element orders, generator search, cyclicity
//! certification, and the multiplicative Z-embedding into F_p* or the
//! norm-one subgroup of F_{p²}*.

use crate::conic::{count_formula, enumerate_solutions, Curve, ORACLE_PRIME_LIMIT};
use crate::error::{Error, Result};
use crate::modarith::{mod_add, mod_mul, Fp2Elem};
use crate::symbols::legendre;

/// A solution (x, y) of y² ≡ ax² + 1; membership is checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point {
    x: u64,
    y: u64,
    curve: Curve,
}

impl Point {
    pub fn new(x: u64, y: u64, curve: Curve) -> Result<Self> {
        let q = curve.p().get();
        let (x, y) = (x % q, y % q);
        if mod_mul(y, y, q) != curve.rhs(x) {
            return Err(Error::NotOnCurve);
        }
        Ok(Point { x, y, curve })
    }

    /// The unit element E = (0, 1).
    pub fn identity(curve: Curve) -> Self {
        Point { x: 0, y: 1 % curve.p().get(), curve }
    }

    #[inline]
    pub fn x(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> u64 {
        self.y
    }

    #[inline]
    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn is_identity(&self) -> bool {
        *self == Point::identity(self.curve)
    }
}

/// (x₃, y₃) = (x₁y₂ + y₁x₂, y₁y₂ + a·x₁x₂) mod p.
pub fn add(p: &Point, q: &Point) -> Result<Point> {
    if p.curve != q.curve {
        return Err(Error::CurveMismatch);
    }
    let m = p.curve.p().get();
    let a = p.curve.a_mod_p();
    let x3 = mod_add(mod_mul(p.x, q.y, m), mod_mul(p.y, q.x, m), m);
    let y3 = mod_add(mod_mul(p.y, q.y, m), mod_mul(a, mod_mul(p.x, q.x, m), m), m);
    Ok(Point { x: x3, y: y3, curve: p.curve })
}

/// (p − x, y); the additive inverse.
pub fn neg(p: &Point) -> Point {
    let m = p.curve.p().get();
    Point {
        x: (m - p.x) % m,
        y: p.y,
        curve: p.curve,
    }
}

/// k-fold sum of P by double-and-add; k = 0 gives E.
pub fn scalar_mul(k: u64, p: &Point) -> Point {
    let mut acc = Point::identity(p.curve);
    let mut base = *p;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = add(&acc, &base).expect("same curve");
        }
        base = add(&base, &base).expect("same curve");
        k >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Smallest k ≥ 1 with [k]P = E; divides N(p).
///
/// Walks down the divisor lattice of N(p) instead of iterating.
pub fn element_order(p: &Point) -> Result<u64> {
    let group_order = count_formula(&p.curve)?.n;
    let mut order = group_order;
    for q in prime_factors(group_order) {
        while order % q == 0 && scalar_mul(order / q, p).is_identity() {
            order /= q;
        }
    }
    debug_assert!(scalar_mul(order, p).is_identity());
    Ok(order)
}

/// First point of full order N(p) in lexicographic scan order.
pub fn find_generator(c: &Curve) -> Result<Point> {
    if c.a_mod_p() == 0 {
        return Err(Error::DegenerateCoefficient);
    }
    let n = count_formula(c)?.n;
    for (x, y) in enumerate_solutions(c)? {
        let p = Point { x, y, curve: *c };
        if element_order(&p)? == n {
            return Ok(p);
        }
    }
    Err(Error::NotFound)
}

/// The map (x, y) ↦ s·x + y (residue case, s² ≡ a) or y + x·√a
/// (nonresidue case, basis d = a mod p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZEmbedding {
    curve: Curve,
    residue_case: bool,
    s: Option<u64>,
    d: u64,
}

impl ZEmbedding {
    pub fn new(curve: Curve) -> Result<Self> {
        let q = curve.p().get();
        if q > ORACLE_PRIME_LIMIT {
            return Err(Error::OracleScaleExceeded);
        }
        let d = curve.a_mod_p();
        match legendre(curve.a(), curve.p())? {
            0 => Err(Error::DegenerateCoefficient),
            1 => {
                // Exhaustive square-root scan; p is capped at oracle scale.
                let s = (0..q)
                    .find(|&s| mod_mul(s, s, q) == d)
                    .expect("a is a residue");
                Ok(ZEmbedding { curve, residue_case: true, s: Some(s), d })
            }
            _ => Ok(ZEmbedding { curve, residue_case: false, s: None, d }),
        }
    }

    pub fn residue_case(&self) -> bool {
        self.residue_case
    }

    pub fn sqrt_a(&self) -> Option<u64> {
        self.s
    }

    pub fn basis(&self) -> u64 {
        self.d
    }
}

/// Embed a point; multiplicative: z(P+Q) = z(P)·z(Q).
pub fn z_embed(p: &Point, emb: &ZEmbedding) -> Result<Fp2Elem> {
    if p.curve != emb.curve {
        return Err(Error::CurveMismatch);
    }
    let m = p.curve.p();
    let q = m.get();
    if emb.residue_case {
        let s = emb.s.expect("residue case carries a root");
        Ok(Fp2Elem::new(mod_add(mod_mul(s, p.x, q), p.y, q), 0, emb.d, m))
    } else {
        Ok(Fp2Elem::new(p.y, p.x, emb.d, m))
    }
}

/// A checked witness that the conic group is cyclic of order N(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicityCertificate {
    pub n: u64,
    pub generator: Point,
    /// [k]G for k = 1..=N(p); the last entry is the identity.
    pub iterates: Vec<Point>,
}

/// Certify cyclicity: find a generator and check that its iterates hit
/// every solution exactly once.
pub fn verify_cyclic(c: &Curve) -> Result<CyclicityCertificate> {
    let n = count_formula(c)?.n;
    let generator = find_generator(c)?;
    let mut iterates = Vec::with_capacity(n as usize);
    let mut acc = generator;
    for _ in 0..n {
        iterates.push(acc);
        acc = add(&acc, &generator)?;
    }
    let mut seen: Vec<(u64, u64)> = iterates.iter().map(|p| (p.x, p.y)).collect();
    seen.sort_unstable();
    let expected = enumerate_solutions(c)?;
    if seen != expected || !iterates[n as usize - 1].is_identity() {
        return Err(Error::NotFound);
    }
    Ok(CyclicityCertificate { n, generator, iterates })
}
