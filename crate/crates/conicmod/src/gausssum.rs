//! Complex-valued sums: classical Gaussian sums in both expressions, the
//! generalized Gaussian sum f(τ) with its extracted periods \bar f for every
//! congruence class of a, quadratic exponential sums, and truncated theta
//! evaluation.
//!
//! All Kronecker/Legendre coefficients are computed exactly as integers
//! before any floating point enters; summation is fixed ascending-n with
//! compensated accumulation so results are deterministic.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modarith::{gcd, is_prime, PrimeModulus};
use crate::symbols::{kronecker, legendre};

/// Tolerance for |a|, p ≤ 500; beyond that use [`tolerance`].
pub const TOL_SMALL: f64 = 1e-8;

/// Scale-dependent comparison tolerance.
pub fn tolerance(scale: u64) -> f64 {
    if scale <= 500 {
        TOL_SMALL
    } else {
        1e-6
    }
}

/// Cap on p and |a| for the summation routines.
pub const SUM_SCALE_LIMIT: u64 = 10_000;

/// Kahan-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    fn add(&mut self, term: Complex64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> Complex64 {
        self.sum
    }
}

/// exp(2πi · num/den) with the argument reduced before conversion.
fn unit_root(num: u64, den: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (num % den) as f64 / den as f64)
}

fn check_sum_scale(p: PrimeModulus) -> Result<()> {
    p.require_odd()?;
    if p.get() > SUM_SCALE_LIMIT {
        return Err(Error::OracleScaleExceeded);
    }
    Ok(())
}

/// G_p = Σ_{n=1}^{p−1} (n/p)·exp(2πin/p).
pub fn gauss_sum_character(p: PrimeModulus) -> Result<Complex64> {
    check_sum_scale(p)?;
    let q = p.get();
    let mut acc = KahanSum::default();
    for n in 1..q {
        let c = legendre(n as i64, p)?;
        if c != 0 {
            acc.add(c as f64 * unit_root(n, q));
        }
    }
    Ok(acc.value())
}

/// G_p = Σ_{m=0}^{p−1} exp(2πim²/p).
pub fn gauss_sum_quadratic(p: PrimeModulus) -> Result<Complex64> {
    check_sum_scale(p)?;
    let q = p.get();
    let mut acc = KahanSum::default();
    for m in 0..q {
        acc.add(unit_root((m as u128 * m as u128 % q as u128) as u64, q));
    }
    Ok(acc.value())
}

/// √p for p ≡ 1 (mod 4), i√p for p ≡ 3 (mod 4).
pub fn closed_form_gp(p: PrimeModulus) -> Result<Complex64> {
    p.require_odd()?;
    let root = (p.get() as f64).sqrt();
    Ok(if p.get() % 4 == 1 {
        Complex64::new(root, 0.0)
    } else {
        Complex64::new(0.0, root)
    })
}

/// (I, J): exponential sums over quadratic residues and nonresidues.
/// They satisfy I + J = −1 and I − J = G_p.
pub fn residue_exp_sums(p: PrimeModulus) -> Result<(Complex64, Complex64)> {
    check_sum_scale(p)?;
    let q = p.get();
    let mut i_acc = KahanSum::default();
    let mut j_acc = KahanSum::default();
    for n in 1..q {
        match legendre(n as i64, p)? {
            1 => i_acc.add(unit_root(n, q)),
            -1 => j_acc.add(unit_root(n, q)),
            _ => {}
        }
    }
    Ok((i_acc.value(), j_acc.value()))
}

/// Which nome the period sum uses: q = exp(2πiτ) for a ≡ 1 (mod 4),
/// q₁ = exp(2πiτ/4) for a ≡ 2, 3 (mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nome {
    Q,
    Q1,
}

impl Nome {
    pub fn label(self) -> &'static str {
        match self {
            Nome::Q => "q",
            Nome::Q1 => "q1",
        }
    }
}

/// One period \bar f(1/|a|) of the generalized Gaussian sum.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodSumResult {
    pub value: Complex64,
    /// Length of one period block in the exponent index n.
    pub period: u64,
    pub nome: Nome,
    /// Nonzero terms (n, coefficient) with coefficient ∈ {−1, +1}.
    pub terms: Vec<(u64, i32)>,
    /// √a (a > 0) or i√|a| (a < 0); attached only for prime |a| and for
    /// a ∈ {±2, ±6, ±10}.
    pub closed_form: Option<Complex64>,
}

fn check_fbar_arg(a: i64) -> Result<u64> {
    if a == 0 || a.rem_euclid(4) == 0 {
        return Err(Error::UnsupportedCongruenceClass);
    }
    let aa = a.unsigned_abs();
    if aa > SUM_SCALE_LIMIT {
        return Err(Error::OracleScaleExceeded);
    }
    Ok(aa)
}

fn sqrt_closed_form(a: i64) -> Complex64 {
    let root = (a.unsigned_abs() as f64).sqrt();
    if a > 0 {
        Complex64::new(root, 0.0)
    } else {
        Complex64::new(0.0, root)
    }
}

/// One period of the generalized Gaussian sum at τ = 1/|a|.
///
/// a ≡ 1 (mod 4): Σ_{n=1}^{|a|−1} (n/|a|)_K·qⁿ with q = exp(2πi/|a|);
/// a ≡ 2, 3 (mod 4): Σ over odd n ≤ 2|a|−1 coprime to 4a of (a/n)_K·q₁ⁿ
/// with q₁ = exp(πi/(2|a|)).
pub fn fbar(a: i64) -> Result<PeriodSumResult> {
    let aa = check_fbar_arg(a)?;
    let (nome, period, terms) = if a.rem_euclid(4) == 1 {
        let terms: Vec<(u64, i32)> = (1..aa)
            .map(|n| (n, kronecker(n as i64, aa as i64)))
            .filter(|&(_, c)| c != 0)
            .collect();
        (Nome::Q, aa, terms)
    } else {
        let terms: Vec<(u64, i32)> = (1..2 * aa)
            .step_by(2)
            .filter(|&n| gcd(n, 4 * aa) == 1)
            .map(|n| (n, kronecker(a, n as i64)))
            .filter(|&(_, c)| c != 0)
            .collect();
        (Nome::Q1, 2 * aa, terms)
    };
    let mut acc = KahanSum::default();
    for &(n, c) in &terms {
        let root = match nome {
            Nome::Q => unit_root(n, aa),
            Nome::Q1 => unit_root(n, 4 * aa),
        };
        acc.add(c as f64 * root);
    }
    let closed_form = if is_prime(aa) || (a.rem_euclid(4) == 2 && (aa == 6 || aa == 10)) {
        Some(sqrt_closed_form(a))
    } else {
        None
    };
    Ok(PeriodSumResult {
        value: acc.value(),
        period,
        nome,
        terms,
        closed_form,
    })
}

/// The re-indexed form of \bar f for odd a ≡ 3 (mod 4):
/// ∓i·Σ_{m=1}^{|a|−1} (m/|a|)_K·exp(2πim/|a|), sign − for a > 0, + for a < 0.
pub fn fbar_via_index_map(a: i64) -> Result<Complex64> {
    if a.rem_euclid(2) == 0 || a.rem_euclid(4) != 3 {
        return Err(Error::UnsupportedCongruenceClass);
    }
    let aa = check_fbar_arg(a)?;
    let mut acc = KahanSum::default();
    for m in 1..aa {
        let c = kronecker(m as i64, aa as i64);
        if c != 0 {
            acc.add(c as f64 * unit_root(m, aa));
        }
    }
    let prefactor = if a > 0 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    Ok(prefactor * acc.value())
}

/// Quadratic exponential sum form for a ≡ 2 (mod 4):
/// (1/(1+i))·Σ_{n=0}^{2|a|−1} exp(2πin²/(4|a|)), with an extra factor i
/// for a < 0.
pub fn quad_exp_sum(a: i64) -> Result<Complex64> {
    if a.rem_euclid(4) != 2 {
        return Err(Error::UnsupportedCongruenceClass);
    }
    let aa = check_fbar_arg(a)?;
    let den = 4 * aa;
    let mut acc = KahanSum::default();
    for n in 0..2 * aa {
        acc.add(unit_root((n as u128 * n as u128 % den as u128) as u64, den));
    }
    let one_plus_i = Complex64::new(1.0, 1.0);
    let prefactor = if a > 0 {
        Complex64::new(1.0, 0.0) / one_plus_i
    } else {
        Complex64::new(0.0, 1.0) / one_plus_i
    };
    Ok(prefactor * acc.value())
}

/// A rational point τ = num/den on the real axis, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalTau {
    pub num: i64,
    pub den: u64,
}

impl RationalTau {
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::OutOfRange);
        }
        let g = gcd(num.unsigned_abs(), den);
        Ok(RationalTau {
            num: num / g as i64,
            den: den / g,
        })
    }
}

/// Consecutive period-block partial sums of the truncated series f(τ) at
/// τ = 1/|a|. Every block equals \bar f(1/|a|).
pub fn partial_f(a: i64, tau: RationalTau, num_periods: u64) -> Result<Vec<Complex64>> {
    let aa = check_fbar_arg(a)?;
    if tau.num != 1 || tau.den != aa {
        return Err(Error::UnsupportedTau);
    }
    let q_case = a.rem_euclid(4) == 1;
    let block_len = if q_case { aa } else { 2 * aa };
    let mut blocks = Vec::with_capacity(num_periods as usize);
    for k in 0..num_periods {
        let mut acc = KahanSum::default();
        for n in k * block_len + 1..=(k + 1) * block_len {
            let c = if q_case || gcd(n, 4 * aa) == 1 {
                kronecker(a, n as i64)
            } else {
                0
            };
            if c != 0 {
                let root = if q_case {
                    unit_root(n, aa)
                } else {
                    unit_root(n, 4 * aa)
                };
                acc.add(c as f64 * root);
            }
        }
        blocks.push(acc.value());
    }
    Ok(blocks)
}

/// Truncated G(τ) = 1 + Σ_{n=1}^{terms} exp(2πin²τ) for Im τ > 0.
pub fn theta_partial(tau_re: f64, tau_im: f64, terms: u32) -> Result<Complex64> {
    // NaN must also be rejected, hence the partial_cmp form.
    if tau_im.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::NonConvergentTau);
    }
    let mut acc = KahanSum::default();
    acc.add(Complex64::new(1.0, 0.0));
    for n in 1..=terms as u64 {
        let n2 = (n * n) as f64;
        let magnitude = (-2.0 * PI * n2 * tau_im).exp();
        acc.add(Complex64::from_polar(magnitude, 2.0 * PI * n2 * tau_re));
    }
    Ok(acc.value())
}

/// Truncated ϑ[1;1](0, τ) = 1 + 2·Σ_{n≥1} exp(2πin²τ), defined as 2·G − 1
/// so the relation 2·G_partial − 1 = ϑ_partial is an exact identity at
/// every truncation.
pub fn theta_char_partial(tau_re: f64, tau_im: f64, terms: u32) -> Result<Complex64> {
    Ok(2.0 * theta_partial(tau_re, tau_im, terms)? - Complex64::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::primes_up_to;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
        (x - y).norm() <= tol
    }

    #[test]
    fn gauss_sums_small_primes() {
        let sqrt5 = Complex64::new(5f64.sqrt(), 0.0);
        let isqrt3 = Complex64::new(0.0, 3f64.sqrt());
        let isqrt7 = Complex64::new(0.0, 7f64.sqrt());
        assert!(close(gauss_sum_character(p(5)).unwrap(), sqrt5, TOL_SMALL));
        assert!(close(gauss_sum_character(p(3)).unwrap(), isqrt3, TOL_SMALL));
        assert!(close(gauss_sum_character(p(7)).unwrap(), isqrt7, TOL_SMALL));
        assert!(close(gauss_sum_quadratic(p(5)).unwrap(), sqrt5, TOL_SMALL));
        assert!(close(gauss_sum_quadratic(p(3)).unwrap(), isqrt3, TOL_SMALL));
        assert!(close(
            gauss_sum_quadratic(p(13)).unwrap(),
            Complex64::new(13f64.sqrt(), 0.0),
            TOL_SMALL
        ));
    }

    #[test]
    fn closed_form_branches() {
        assert!(close(
            closed_form_gp(p(5)).unwrap(),
            Complex64::new(5f64.sqrt(), 0.0),
            0.0
        ));
        assert!(close(
            closed_form_gp(p(3)).unwrap(),
            Complex64::new(0.0, 3f64.sqrt()),
            0.0
        ));
        assert!(close(
            closed_form_gp(p(17)).unwrap(),
            Complex64::new(17f64.sqrt(), 0.0),
            0.0
        ));
    }

    #[test]
    fn i_and_j_identities() {
        for q in primes_up_to(199).into_iter().filter(|&q| q > 2) {
            let m = p(q);
            let (i_sum, j_sum) = residue_exp_sums(m).unwrap();
            assert!(close(i_sum + j_sum, Complex64::new(-1.0, 0.0), TOL_SMALL));
            assert!(close(i_sum - j_sum, closed_form_gp(m).unwrap(), TOL_SMALL));
            // G_p = 2I + 1
            assert!(close(
                2.0 * i_sum + Complex64::new(1.0, 0.0),
                gauss_sum_character(m).unwrap(),
                TOL_SMALL
            ));
        }
    }

    #[test]
    fn fbar_worked_examples() {
        // a = 5: q − q² − q³ + q⁴ = √5
        let r = fbar(5).unwrap();
        assert_eq!(r.nome, Nome::Q);
        assert_eq!(r.terms, vec![(1, 1), (2, -1), (3, -1), (4, 1)]);
        assert!(close(r.value, Complex64::new(5f64.sqrt(), 0.0), 1e-12));
        assert!(close(r.closed_form.unwrap(), r.value, 1e-12));

        // a = −3: q − q² = i√3
        let r = fbar(-3).unwrap();
        assert_eq!(r.nome, Nome::Q);
        assert_eq!(r.terms, vec![(1, 1), (2, -1)]);
        assert!(close(r.value, Complex64::new(0.0, 3f64.sqrt()), 1e-12));

        // a = 3: q₁ − q₁⁵ = √3
        let r = fbar(3).unwrap();
        assert_eq!(r.nome, Nome::Q1);
        assert_eq!(r.terms, vec![(1, 1), (5, -1)]);
        assert!(close(r.value, Complex64::new(3f64.sqrt(), 0.0), 1e-12));

        // a = −5: q₁ + q₁³ + q₁⁷ + q₁⁹ = i√5
        let r = fbar(-5).unwrap();
        assert_eq!(r.terms, vec![(1, 1), (3, 1), (7, 1), (9, 1)]);
        assert!(close(r.value, Complex64::new(0.0, 5f64.sqrt()), 1e-12));

        // a = 6: q₁ + q₁⁵ − q₁⁷ − q₁¹¹ = √6
        let r = fbar(6).unwrap();
        assert_eq!(r.terms, vec![(1, 1), (5, 1), (7, -1), (11, -1)]);
        assert!(close(r.value, Complex64::new(6f64.sqrt(), 0.0), TOL_SMALL));
        assert!(r.closed_form.is_some());
    }

    #[test]
    fn fbar_composite_has_no_closed_form() {
        // \bar f for a = 9 sums to zero; no closed form is attached.
        let r = fbar(9).unwrap();
        assert!(r.closed_form.is_none());
        assert!(r.value.norm() < TOL_SMALL);
        assert_eq!(fbar(8), Err(Error::UnsupportedCongruenceClass));
        assert_eq!(fbar(0), Err(Error::UnsupportedCongruenceClass));
    }

    #[test]
    fn fbar_coefficients_obey_sign_flip_laws() {
        // The q₁-case coefficients flip sign under n ↦ n + 2|a| (exact
        // integer identity feeding the period structure).
        for a in (-100i64..=100).filter(|&a| matches!(a.rem_euclid(4), 2 | 3)) {
            let aa = a.unsigned_abs();
            for n in (1..2 * aa as i64).step_by(2) {
                if gcd(n as u64, 4 * aa) == 1 {
                    assert_eq!(
                        kronecker(a, n + 2 * aa as i64),
                        -kronecker(a, n),
                        "a = {a}, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn reindexed_fbar_matches_direct() {
        assert!(close(
            fbar_via_index_map(3).unwrap(),
            Complex64::new(3f64.sqrt(), 0.0),
            TOL_SMALL
        ));
        assert!(close(
            fbar_via_index_map(-5).unwrap(),
            Complex64::new(0.0, 5f64.sqrt()),
            TOL_SMALL
        ));
        assert!(close(
            fbar_via_index_map(11).unwrap(),
            fbar(11).unwrap().value,
            TOL_SMALL
        ));
        assert_eq!(fbar_via_index_map(5), Err(Error::UnsupportedCongruenceClass));
        assert_eq!(fbar_via_index_map(6), Err(Error::UnsupportedCongruenceClass));
    }

    #[test]
    fn quad_exp_sum_verified_values() {
        assert!(close(
            quad_exp_sum(6).unwrap(),
            Complex64::new(6f64.sqrt(), 0.0),
            TOL_SMALL
        ));
        assert!(close(
            quad_exp_sum(2).unwrap(),
            Complex64::new(2f64.sqrt(), 0.0),
            TOL_SMALL
        ));
        assert!(close(
            quad_exp_sum(-10).unwrap(),
            Complex64::new(0.0, 10f64.sqrt()),
            TOL_SMALL
        ));
        assert_eq!(quad_exp_sum(3), Err(Error::UnsupportedCongruenceClass));
    }

    #[test]
    fn quad_exp_raw_sum_matches_paper_pattern() {
        // For a = 6: Σ_{n=0}^{11} q₁^{n²} = 4q₁ + 2q₁⁹ = (1+i)√6.
        let q1 = Complex64::from_polar(1.0, PI / 12.0);
        let direct: Complex64 = (0..12u64)
            .map(|n| q1.powu((n * n % 24) as u32))
            .sum();
        let pattern = 4.0 * q1 + 2.0 * q1.powu(9);
        assert!(close(direct, pattern, 1e-12));
        assert!(close(
            direct,
            Complex64::new(1.0, 1.0) * Complex64::new(6f64.sqrt(), 0.0),
            1e-12
        ));
    }

    #[test]
    fn partial_f_blocks_repeat() {
        for (a, n_blocks) in [(5i64, 3u64), (-3, 2), (3, 2), (-5, 4), (6, 3)] {
            let tau = RationalTau::new(1, a.unsigned_abs()).unwrap();
            let blocks = partial_f(a, tau, n_blocks).unwrap();
            let expect = fbar(a).unwrap().value;
            for b in &blocks {
                assert!(close(*b, expect, TOL_SMALL), "a = {a}");
            }
        }
        let bad_tau = RationalTau::new(1, 7).unwrap();
        assert_eq!(partial_f(5, bad_tau, 1), Err(Error::UnsupportedTau));
    }

    #[test]
    fn theta_partial_values() {
        assert_eq!(
            theta_partial(0.0, 1.0, 0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        // 1 + e^{−2π} + e^{−8π} + ... at τ = i; frozen from a direct sum.
        let v = theta_partial(0.0, 1.0, 10).unwrap();
        assert!((v.re - 1.0018674427438696).abs() < 1e-15);
        assert!(v.im.abs() < 1e-300);
        assert_eq!(theta_partial(0.3, 0.0, 5), Err(Error::NonConvergentTau));
        assert_eq!(theta_partial(0.3, -1.0, 5), Err(Error::NonConvergentTau));
    }

    #[test]
    fn theta_identity_exact() {
        let g = theta_partial(0.3, 0.7, 50).unwrap();
        let t = theta_char_partial(0.3, 0.7, 50).unwrap();
        assert_eq!(2.0 * g - Complex64::new(1.0, 0.0), t);
        // And against an independently accumulated 1 + 2Σ.
        let mut acc = Complex64::new(1.0, 0.0);
        for n in 1..=50u64 {
            let n2 = (n * n) as f64;
            acc += 2.0
                * Complex64::from_polar(
                    (-2.0 * PI * n2 * 0.7).exp(),
                    2.0 * PI * n2 * 0.3,
                );
        }
        assert!(close(t, acc, 1e-14));
    }
}
