//! Gauss, Ramanujan, and Kloosterman sums with brute-force and closed-form
//! evaluators, plus the identities connecting them: Kloosterman splitting,
//! character decomposition of Kloosterman sums, closed forms for the
//! twisted Kloosterman-square sum K, Gauss-sum induction, the shifted
//! Ramanujan correlation psi, and the character product identity.
//!
//! Brute-force evaluators are the oracles: they share nothing with the
//! closed forms beyond the unit exponential `e(a/q)`.

use alloc::vec;
use alloc::vec::Vec;

// Needed for f64 method resolution under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::{factor, gcd, gcd_i64, inf_gcd, mod_inverse, FactoredInteger};
use crate::characters::{CharacterGroup, DirichletCharacter};
use crate::error::{Error, Result};
use crate::Complex64;

use core::f64::consts::PI;

/// Residual below which a theoretically integral sum is rounded.
pub const INTEGER_ROUND_TOL: f64 = 1e-6;

/// Absolute tolerance for comparing a sum of `terms` unit-modulus terms.
pub fn sum_tolerance(terms: u64) -> f64 {
    1e-10 * terms.max(1) as f64
}

/// The unit exponential `e(num/den) = exp(2 pi i num / den)`.
pub fn e_frac(num: i64, den: u64) -> Complex64 {
    let den = den.max(1);
    let r = num.rem_euclid(den as i64) as u64;
    let t = 2.0 * PI * (r as f64) / (den as f64);
    let (s, c) = t.sin_cos();
    Complex64::new(c, s)
}

/// Value of an exponential sum, with the rounded integer attached when
/// theory guarantees a rational-integer result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumValue {
    pub value: Complex64,
    pub claimed_integer: Option<i64>,
}

impl ExpSumValue {
    /// Wrap an exactly known integer value.
    pub fn exact_integer(k: i64) -> Self {
        ExpSumValue {
            value: Complex64::new(k as f64, 0.0),
            claimed_integer: Some(k),
        }
    }

    /// Wrap a numerically computed sum with no integrality claim.
    pub fn from_sum(value: Complex64) -> Self {
        ExpSumValue {
            value,
            claimed_integer: None,
        }
    }

    /// Wrap a sum that theory says is a rational integer; the claim is
    /// recorded only when the residual is below [`INTEGER_ROUND_TOL`].
    pub fn from_integral_sum(value: Complex64) -> Self {
        let rounded = value.re.round();
        let resid = (value - rounded).norm();
        ExpSumValue {
            value,
            claimed_integer: (resid < INTEGER_ROUND_TOL && rounded.abs() < 9.0e18)
                .then_some(rounded as i64),
        }
    }

    /// Real part, for sums that are real by symmetry.
    pub fn real(&self) -> f64 {
        self.value.re
    }
}

/// Evaluation route for the Ramanujan sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RamanujanMode {
    /// Direct summation over units.
    Brute,
    /// Divisor form `sum_{d | (n,q)} mu(q/d) d`.
    Divisor,
    /// von Sterneck form `mu(q/(q,n)) phi(q) / phi(q/(q,n))`.
    VonSterneck,
}

/// Ramanujan sum `R(n, q)`. All three modes agree exactly (after integer
/// rounding of the brute-force route).
pub fn ramanujan(n: i64, q: &FactoredInteger, mode: RamanujanMode) -> ExpSumValue {
    let qv = q.value();
    match mode {
        RamanujanMode::Brute => {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 1..=qv {
                if gcd(a, qv) == 1 {
                    acc += e_frac((a as i128 * n as i128).rem_euclid(qv as i128) as i64, qv);
                }
            }
            ExpSumValue::from_integral_sum(acc)
        }
        RamanujanMode::Divisor => {
            let g = if n == 0 { qv } else { gcd_i64(n, qv) };
            let mut acc: i64 = 0;
            for d in factor(g).expect("g >= 1").divisors() {
                let mu = factor(qv / d).expect("q/d >= 1").mobius();
                acc += mu * d as i64;
            }
            ExpSumValue::exact_integer(acc)
        }
        RamanujanMode::VonSterneck => {
            let g = if n == 0 { qv } else { gcd_i64(n, qv) };
            let m = factor(qv / g).expect("q/g >= 1");
            let phi_q = q.phi();
            let phi_m = m.phi();
            debug_assert_eq!(phi_q % phi_m, 0);
            ExpSumValue::exact_integer(m.mobius() * (phi_q / phi_m) as i64)
        }
    }
}

/// Ramanujan sum at a prime power, by the von Sterneck case law. Used by
/// the closed form of [`psi`].
fn ramanujan_prime_power(n: i64, p: u64, alpha: u32) -> i64 {
    let pe = p.pow(alpha);
    // v = min(v_p(n), alpha), with n = 0 treated as v = alpha.
    let mut v = 0u32;
    if n == 0 {
        v = alpha;
    } else {
        let mut m = n.unsigned_abs();
        while v < alpha && m % p == 0 {
            m /= p;
            v += 1;
        }
    }
    if v >= alpha {
        (pe - pe / p) as i64 // phi(p^alpha)
    } else if v + 1 == alpha {
        -((pe / p) as i64)
    } else {
        0
    }
}

/// Gauss sum `G_chi(n) = sum_{a (q)} chi(a) e(an/q)`.
pub fn gauss_sum(chi: &DirichletCharacter<'_>, n: i64) -> ExpSumValue {
    let q = chi.group().modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let c = chi.evaluate(a as i64);
        if c != Complex64::new(0.0, 0.0) {
            acc += c * e_frac((a as i128 * n as i128).rem_euclid(q as i128) as i64, q);
        }
    }
    ExpSumValue::from_sum(acc)
}

/// Kloosterman sum `S(m, n; q) = sum*_{d (q)} e((m d + n dbar)/q)`.
///
/// The sum is real; imaginary parts cancel in pairs `d <-> -d`, so only the
/// cosine component is accumulated.
pub fn kloosterman(m: i64, n: i64, q: &FactoredInteger) -> ExpSumValue {
    let qv = q.value();
    if qv == 1 {
        return ExpSumValue::from_sum(Complex64::new(1.0, 0.0));
    }
    let mut acc = 0.0f64;
    for d in 1..qv {
        if gcd(d, qv) != 1 {
            continue;
        }
        let dbar = mod_inverse(d as i64, qv).expect("unit") % qv;
        let idx = (m as i128 * d as i128 + n as i128 * dbar as i128).rem_euclid(qv as i128);
        acc += (2.0 * PI * idx as f64 / qv as f64).cos();
    }
    ExpSumValue::from_sum(Complex64::new(acc, 0.0))
}

/// `S(m, a; q)` for every residue `a` in `0..q`, sharing the unit/inverse
/// enumeration and a cosine table across the whole row.
pub fn kloosterman_row(m: i64, q: u64) -> Vec<f64> {
    if q == 1 {
        return vec![1.0];
    }
    let cos_table: Vec<f64> = (0..q)
        .map(|j| (2.0 * PI * j as f64 / q as f64).cos())
        .collect();
    let mut row = vec![0.0f64; q as usize];
    for d in 1..q {
        if gcd(d, q) != 1 {
            continue;
        }
        let dbar = mod_inverse(d as i64, q).expect("unit") % q;
        let md = (m as i128 * d as i128).rem_euclid(q as i128) as u64;
        for (a, slot) in row.iter_mut().enumerate() {
            let idx = (md + a as u64 * dbar % q) % q;
            *slot += cos_table[idx as usize];
        }
    }
    row
}

/// Both factors of the Kloosterman splitting
/// `S(m, n; bN) = S(Nbar m, Nbar n; b) S(bbar m, bbar n; N)` for `(b, N) = 1`.
#[derive(Debug, Clone, Copy)]
pub struct KloostermanSplit {
    pub left: ExpSumValue,
    pub right: ExpSumValue,
}

impl KloostermanSplit {
    pub fn product(&self) -> Complex64 {
        self.left.value * self.right.value
    }
}

/// Split `S(m, n; b N)` into its modulus-`b` and modulus-`N` factors.
pub fn kloosterman_split(m: i64, n: i64, b: u64, level: u64) -> Result<KloostermanSplit> {
    if b == 0 || level == 0 {
        return Err(Error::Domain("moduli must be positive"));
    }
    if gcd(b, level) != 1 {
        return Err(Error::Domain("kloosterman_split requires (b, N) = 1"));
    }
    let fb = factor(b)?;
    let fn_ = factor(level)?;
    let left = if b == 1 {
        ExpSumValue::from_sum(Complex64::new(1.0, 0.0))
    } else {
        let nbar = mod_inverse(level as i64, b)? as i128;
        kloosterman(
            (nbar * m as i128).rem_euclid(b as i128) as i64,
            (nbar * n as i128).rem_euclid(b as i128) as i64,
            &fb,
        )
    };
    let right = if level == 1 {
        ExpSumValue::from_sum(Complex64::new(1.0, 0.0))
    } else {
        let bbar = mod_inverse(b as i64, level)? as i128;
        kloosterman(
            (bbar * m as i128).rem_euclid(level as i128) as i64,
            (bbar * n as i128).rem_euclid(level as i128) as i64,
            &fn_,
        )
    };
    Ok(KloostermanSplit { left, right })
}

/// Character decomposition of a Kloosterman sum with proportional arguments:
/// `S(nm, np; b) = (1/phi(b)) sum_{chi (b)} chibar(p) G_chi(n^2 m) G_chi(1)`
/// for `(p, b) = (n, b) = 1`.
pub fn kloosterman_char_decomp(
    n: i64,
    m: i64,
    p: u64,
    b: &FactoredInteger,
) -> Result<ExpSumValue> {
    let bv = b.value();
    if gcd(p, bv) != 1 {
        return Err(Error::Domain("char decomposition requires (p, b) = 1"));
    }
    if gcd_i64(n, bv) != 1 {
        return Err(Error::Domain("char decomposition requires (n, b) = 1"));
    }
    let group = CharacterGroup::new(b.clone())?;
    let n2m = (n as i128 * n as i128 * m as i128).rem_euclid(bv as i128) as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for chi in group.characters() {
        let cbar = chi.conjugate();
        acc += cbar.evaluate(p as i64) * gauss_sum(&chi, n2m).value * gauss_sum(&chi, 1).value;
    }
    Ok(ExpSumValue::from_sum(acc / b.phi() as f64))
}

fn require_prime_level(chi: &DirichletCharacter<'_>) -> Result<u64> {
    let n = chi.group().modulus();
    if !chi.group().modulus_factored().is_prime() {
        return Err(Error::Domain("K sums are defined for prime modulus"));
    }
    Ok(n)
}

/// Brute-force twisted Kloosterman-square sum
/// `K(n1, n2, chi) = sum*_{a (N)} chi(a) S(n1, a; N) S(n2, a; N)`.
pub fn k_sum(n1: i64, n2: i64, chi: &DirichletCharacter<'_>) -> Result<ExpSumValue> {
    let level = require_prime_level(chi)?;
    if n1.rem_euclid(level as i64) == 0 || n2.rem_euclid(level as i64) == 0 {
        return Err(Error::Domain("K(n1, n2, chi) requires N dividing neither"));
    }
    let row1 = kloosterman_row(n1, level);
    let row2 = kloosterman_row(n2, level);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..level {
        let c = chi.evaluate(a as i64);
        if c != Complex64::new(0.0, 0.0) {
            acc += c * row1[a as usize] * row2[a as usize];
        }
    }
    Ok(if chi.is_principal() {
        ExpSumValue::from_integral_sum(acc)
    } else {
        ExpSumValue::from_sum(acc)
    })
}

/// Closed form of `K(n1, n2, chi_0)` at prime `N`:
/// `phi(N)^2 + phi(N) - 1` when `n1 = n2 (mod N)`, else `-phi(N) - 2`.
pub fn k_sum_closed(n1: i64, n2: i64, level: u64) -> Result<i64> {
    let f = factor(level)?;
    if !f.is_prime() {
        return Err(Error::Domain("K closed form requires prime N"));
    }
    if n1.rem_euclid(level as i64) == 0 || n2.rem_euclid(level as i64) == 0 {
        return Err(Error::Domain("K(n1, n2, chi_0) requires N dividing neither"));
    }
    let phi = (level - 1) as i64;
    Ok(if (n1 - n2).rem_euclid(level as i64) == 0 {
        phi * phi + phi - 1
    } else {
        -phi - 2
    })
}

/// Intermediate identity for `K`, the exact content of the derivation:
/// `K(n1, n2, chi) = G_chi(1)^2 sum*_{u (N)} chibar(u+1) chibar(n1 ubar + n2)
///  + delta_chi D(n1, n2)` with `D = phi(N)^2` on the diagonal and
/// `-2 phi(N)` otherwise.
pub fn k_sum_intermediate(n1: i64, n2: i64, chi: &DirichletCharacter<'_>) -> Result<ExpSumValue> {
    let level = require_prime_level(chi)?;
    if n1.rem_euclid(level as i64) == 0 || n2.rem_euclid(level as i64) == 0 {
        return Err(Error::Domain("K(n1, n2, chi) requires N dividing neither"));
    }
    let g1 = gauss_sum(chi, 1).value;
    let cbar = chi.conjugate();
    let mut inner = Complex64::new(0.0, 0.0);
    for u in 1..level {
        let ubar = mod_inverse(u as i64, level)? as i128;
        let arg = (n1 as i128 * ubar + n2 as i128).rem_euclid(level as i128) as i64;
        inner += cbar.evaluate(u as i64 + 1) * cbar.evaluate(arg);
    }
    let phi = (level - 1) as f64;
    let delta = if chi.is_principal() {
        if (n1 - n2).rem_euclid(level as i64) == 0 {
            phi * phi
        } else {
            -2.0 * phi
        }
    } else {
        0.0
    };
    Ok(ExpSumValue::from_sum(g1 * g1 * inner + delta))
}

/// Evaluation route for [`psi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiMode {
    /// Direct sum of shifted Ramanujan sums (divisor-form inner values).
    Brute,
    /// Product over prime powers of `r` via the case law.
    Closed,
}

/// Correlation sum of shifted Ramanujan sums
/// `psi(n1, n2, r) = sum*_{u (r)} R(u + n1, r) R(u + n2, r)`,
/// multiplicative in `r` with prime-power values
/// `p R(n1-n2, p) - R(n1, p) R(n2, p)` at `alpha = 1`, `0` when `alpha > 1`
/// and `p | n1 n2`, and `p^alpha R(n1-n2, p^alpha)` otherwise.
pub fn psi(n1: i64, n2: i64, r: &FactoredInteger, mode: PsiMode) -> i64 {
    match mode {
        PsiMode::Brute => {
            let rv = r.value();
            let mut acc: i128 = 0;
            for u in 1..=rv {
                if gcd(u, rv) != 1 {
                    continue;
                }
                let a = ramanujan(u as i64 + n1, r, RamanujanMode::Divisor)
                    .claimed_integer
                    .expect("divisor mode is exact");
                let b = ramanujan(u as i64 + n2, r, RamanujanMode::Divisor)
                    .claimed_integer
                    .expect("divisor mode is exact");
                acc += a as i128 * b as i128;
            }
            i64::try_from(acc).expect("psi fits in i64 at desk scale")
        }
        PsiMode::Closed => {
            let mut acc: i128 = 1;
            for &(p, alpha) in r.factors() {
                let local = if alpha == 1 {
                    p as i128 * ramanujan_prime_power(n1 - n2, p, 1) as i128
                        - ramanujan_prime_power(n1, p, 1) as i128
                            * ramanujan_prime_power(n2, p, 1) as i128
                } else if n1.rem_euclid(p as i64) == 0 || n2.rem_euclid(p as i64) == 0 {
                    0
                } else {
                    p.pow(alpha) as i128 * ramanujan_prime_power(n1 - n2, p, alpha) as i128
                };
                acc *= local;
            }
            i64::try_from(acc).expect("psi fits in i64 at desk scale")
        }
    }
}

/// Gauss-sum induction reduction: for `chi` modulo `r`, `r | b1`, and
/// `r1 = (b1, r^inf)`, the induced character's Gauss sum collapses to
/// `chi(b1/r1) R(m1^2, b1/r1) (r1/r) G_chi(m1^2 r / r1)` when
/// `r1 | m1^2 r`, and to 0 otherwise.
pub fn gauss_induction(chi: &DirichletCharacter<'_>, b1: u64, m1: i64) -> Result<ExpSumValue> {
    let r = chi.group().modulus();
    if b1 == 0 || b1 % r != 0 {
        return Err(Error::Domain("gauss_induction requires r | b1"));
    }
    let r1 = inf_gcd(b1, r.max(1));
    let d1 = b1 / r1;
    let m1sq_r = m1 as i128 * m1 as i128 * r as i128;
    if m1sq_r.rem_euclid(r1 as i128) != 0 {
        return Ok(ExpSumValue::from_sum(Complex64::new(0.0, 0.0)));
    }
    let chi_d = chi.evaluate(d1 as i64);
    let ram = ramanujan(
        (m1 as i128 * m1 as i128).rem_euclid(d1 as i128) as i64,
        &factor(d1)?,
        RamanujanMode::VonSterneck,
    )
    .claimed_integer
    .expect("von Sterneck is exact") as f64;
    let scale = (r1 / r) as f64;
    let g = gauss_sum(chi, (m1sq_r / r1 as i128).rem_euclid(r as i128) as i64);
    Ok(ExpSumValue::from_sum(chi_d * ram * scale * g.value))
}

/// Both sides of the character product identity: the character-sum side
/// `sum_{chi (r)} chi(d1^2 d2bar^2) G_chi(m1^2) G_chi(1) G_chibar(m2^2) G_chibar(1)`
/// and the Ramanujan-correlation side `phi(r) psi(m1^2 d2^2, m2^2 d1^2, r)`.
#[derive(Debug, Clone, Copy)]
pub struct CharProductCheck {
    pub char_side: Complex64,
    pub psi_side: f64,
    /// Unit-modulus term count of the character side, for the tolerance policy.
    pub terms: u64,
}

pub fn char_product_identity(
    m1: i64,
    m2: i64,
    d1: u64,
    d2: u64,
    r: &FactoredInteger,
) -> Result<CharProductCheck> {
    let rv = r.value();
    if gcd(d1, d2) != 1 {
        return Err(Error::Domain("char_product_identity requires (d1, d2) = 1"));
    }
    if gcd(rv, d1 * d2) != 1 {
        return Err(Error::Domain(
            "char_product_identity requires (r, d1 d2) = 1",
        ));
    }
    let group = CharacterGroup::new(r.clone())?;
    let d2_sq_inv = mod_inverse((d2 as i128 * d2 as i128).rem_euclid(rv as i128) as i64, rv)?;
    let twist = (d1 as i128 * d1 as i128 * d2_sq_inv as i128).rem_euclid(rv as i128) as i64;
    let m1sq = (m1 as i128 * m1 as i128).rem_euclid(rv as i128) as i64;
    let m2sq = (m2 as i128 * m2 as i128).rem_euclid(rv as i128) as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for chi in group.characters() {
        let cbar = chi.conjugate();
        acc += chi.evaluate(twist)
            * gauss_sum(&chi, m1sq).value
            * gauss_sum(&chi, 1).value
            * gauss_sum(&cbar, m2sq).value
            * gauss_sum(&cbar, 1).value;
    }
    let shift1 = (m1 as i128 * m1 as i128 * d2 as i128 * d2 as i128)
        .rem_euclid(rv as i128)
        .max(0) as i64;
    let shift2 = (m2 as i128 * m2 as i128 * d1 as i128 * d1 as i128)
        .rem_euclid(rv as i128)
        .max(0) as i64;
    let psi_side = r.phi() as f64 * psi(shift1, shift2, r, PsiMode::Brute) as f64;
    Ok(CharProductCheck {
        char_side: acc,
        psi_side,
        terms: r.phi() * 4 * rv,
    })
}
