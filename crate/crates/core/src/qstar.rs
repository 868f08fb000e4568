//! Prime-sum main-term machinery: the double-Kloosterman sum `A`, the
//! Bessel-weighted prime sum `Q*`, their closed-form main terms, the
//! finite-support Bessel integral `I`, and the symplectic limit target.
//!
//! All prime sums run over one shared sieve supplied by the caller; `log p`
//! is computed once per prime.

use alloc::vec;
use alloc::vec::Vec;

// Needed for f64 method resolution under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::{factor, gcd, PrimeList};
use crate::density::{ks_main_term, ConductorSpec, TestFunction};
use crate::error::{Error, Result};
use crate::expsums::{kloosterman_row, psi, ramanujan, PsiMode, RamanujanMode};
use crate::quad::GaussLegendre;
use crate::special::{bessel_j_unchecked, BESSEL_MAX_ORDER};

use core::f64::consts::PI;

/// Prime cap for brute-force prime sums.
pub const PRIME_SUM_CAP: u64 = 100_000_000;

/// Parameters of one `Q*`/`A` evaluation. Construction enforces the
/// standing assumptions: prime level coprime to `b1 b2 m1 m2`, even weights.
#[derive(Debug, Clone)]
pub struct QStarParams {
    pub m1: u64,
    pub m2: u64,
    pub b1: u64,
    pub b2: u64,
    /// Prime level `N`.
    pub level: u64,
    pub k1: u64,
    pub k2: u64,
    pub phi: TestFunction,
    pub conductor: ConductorSpec,
    r: u64,
    d1: u64,
    d2: u64,
}

impl QStarParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m1: u64,
        m2: u64,
        b1: u64,
        b2: u64,
        level: u64,
        k1: u64,
        k2: u64,
        phi: TestFunction,
    ) -> Result<Self> {
        if m1 == 0 || m2 == 0 || b1 == 0 || b2 == 0 {
            return Err(Error::Domain("m1, m2, b1, b2 must be positive"));
        }
        if !factor(level)?.is_prime() {
            return Err(Error::Domain("level must be prime"));
        }
        for v in [b1, b2, m1, m2] {
            if v % level == 0 {
                return Err(Error::Domain("level must not divide b1, b2, m1, m2"));
            }
        }
        if k1.max(k2) > BESSEL_MAX_ORDER as u64 + 1 {
            return Err(Error::CapExceeded {
                what: "weight",
                limit: BESSEL_MAX_ORDER as u64 + 1,
            });
        }
        let conductor = ConductorSpec::new(k1, k2, level, level)?;
        let r = gcd(b1, b2);
        Ok(QStarParams {
            m1,
            m2,
            b1,
            b2,
            level,
            k1,
            k2,
            phi,
            conductor,
            r,
            d1: b1 / r,
            d2: b2 / r,
        })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn d1(&self) -> u64 {
        self.d1
    }

    pub fn d2(&self) -> u64 {
        self.d2
    }

    fn log_conductor(&self) -> f64 {
        (self.conductor.r as f64).ln()
    }
}

/// `i^k` for even `k`.
fn i_pow_even(k: u64) -> f64 {
    debug_assert_eq!(k % 2, 0);
    if k % 4 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The raw prime sum `A(x)` together with the variant that drops the
/// `p | b1 b2 N` terms (the two bookkeeping conventions differ only in
/// finitely many terms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ASumValue {
    /// All primes `p <= x` per the raw definition.
    pub raw: f64,
    /// Only primes coprime to `b1 b2 N`.
    pub coprime_only: f64,
}

/// Brute-force `A(x) = sum_{p <= x} S(m1^2, p; b1 N) S(m2^2, p; b2 N) log p`.
pub fn a_sum_brute(x: u64, p: &QStarParams, primes: &PrimeList) -> Result<ASumValue> {
    if x > PRIME_SUM_CAP {
        return Err(Error::CapExceeded {
            what: "A-sum range",
            limit: PRIME_SUM_CAP,
        });
    }
    if primes.limit() < x {
        return Err(Error::Domain("sieve does not cover the requested range"));
    }
    let q1 = p.b1 * p.level;
    let q2 = p.b2 * p.level;
    let row1 = kloosterman_row((p.m1 * p.m1) as i64, q1);
    let row2 = kloosterman_row((p.m2 * p.m2) as i64, q2);
    let mut raw = 0.0f64;
    let mut coprime = 0.0f64;
    for &prime in primes.primes() {
        if prime > x {
            break;
        }
        let term =
            row1[(prime % q1) as usize] * row2[(prime % q2) as usize] * (prime as f64).ln();
        raw += term;
        if q1 % prime != 0 && q2 % prime != 0 {
            coprime += term;
        }
    }
    Ok(ASumValue {
        raw,
        coprime_only: coprime,
    })
}

/// Closed-form main term of `A(x)`:
/// `psi(m1^2 d2^2, m2^2 d1^2, N r)/phi(d1 d2 N r) R(m1^2, d1) R(m2^2, d2)
///  mu(d1 d2) [gcd(r, d1 d2) = 1] x`.
pub fn a_main_term(x: f64, p: &QStarParams) -> f64 {
    main_term_coefficient(p) * x
}

fn main_term_coefficient(p: &QStarParams) -> f64 {
    let (d1, d2, r, level) = (p.d1, p.d2, p.r, p.level);
    if gcd(r, d1 * d2) != 1 {
        return 0.0; // principal character modulo d1 d2 kills the term
    }
    let dd = factor(d1 * d2).expect("positive");
    let mu = dd.mobius();
    if mu == 0 {
        return 0.0;
    }
    let n1 = (p.m1 * p.m1 * d2 * d2) as i64;
    let n2 = (p.m2 * p.m2 * d1 * d1) as i64;
    let nr = factor(level * r).expect("positive");
    let psi_val = psi(n1, n2, &nr, PsiMode::Closed);
    let phi_all = factor(d1 * d2 * level * r).expect("positive").phi();
    let r1 = ramanujan((p.m1 * p.m1) as i64, &factor(d1).expect("positive"), RamanujanMode::VonSterneck)
        .claimed_integer
        .expect("exact");
    let r2 = ramanujan((p.m2 * p.m2) as i64, &factor(d2).expect("positive"), RamanujanMode::VonSterneck)
        .claimed_integer
        .expect("exact");
    psi_val as f64 / phi_all as f64 * r1 as f64 * r2 as f64 * mu as f64
}

/// One row of an `A`-sum agreement scan.
#[derive(Debug, Clone, Copy)]
pub struct AgreementRow {
    pub x: u64,
    pub raw: f64,
    pub coprime_only: f64,
    pub main: f64,
    /// `(raw - main)/x`, signed.
    pub scaled_residual: f64,
}

/// Report of the brute-vs-main agreement over an `x`-grid.
#[derive(Debug, Clone)]
pub struct AgreementReport {
    pub rows: Vec<AgreementRow>,
    /// Least-squares slope of `log |residual/x|` against `log x`.
    pub fitted_exponent: f64,
    /// Sign changes of the raw residual over a dense logarithmic scan.
    pub sign_changes: usize,
}

/// Cumulative agreement scan: one pass over the sieve produces `A(x)` at
/// every grid point plus a dense sign-change scan of the residual.
pub fn a_agreement(
    x_grid: &[u64],
    p: &QStarParams,
    primes: &PrimeList,
) -> Result<AgreementReport> {
    let &x_max = x_grid.iter().max().ok_or(Error::Domain("empty grid"))?;
    if primes.limit() < x_max {
        return Err(Error::Domain("sieve does not cover the requested range"));
    }
    let mut grid: Vec<u64> = x_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    // Dense internal checkpoints for the oscillation scan.
    let dense: Vec<u64> = (0..=120)
        .map(|i| {
            let lo = (grid[0] as f64).max(8.0);
            (lo * (x_max as f64 / lo).powf(i as f64 / 120.0)).round() as u64
        })
        .collect();
    let q1 = p.b1 * p.level;
    let q2 = p.b2 * p.level;
    let row1 = kloosterman_row((p.m1 * p.m1) as i64, q1);
    let row2 = kloosterman_row((p.m2 * p.m2) as i64, q2);
    let coeff = main_term_coefficient(p);

    let mut raw = 0.0f64;
    let mut coprime = 0.0f64;
    let mut rows = Vec::with_capacity(grid.len());
    let mut sign_changes = 0usize;
    let mut last_sign = 0i8;
    let mut gi = 0usize;
    let mut di = 0usize;
    let snapshot = |x: u64, raw: f64, coprime: f64, rows: &mut Vec<AgreementRow>| {
        let main = coeff * x as f64;
        rows.push(AgreementRow {
            x,
            raw,
            coprime_only: coprime,
            main,
            scaled_residual: (raw - main) / x as f64,
        });
    };
    for &prime in primes.primes() {
        if prime > x_max {
            break;
        }
        while gi < grid.len() && grid[gi] < prime {
            snapshot(grid[gi], raw, coprime, &mut rows);
            gi += 1;
        }
        while di < dense.len() && dense[di] < prime {
            let resid = raw - coeff * dense[di] as f64;
            let s = if resid > 0.0 { 1i8 } else { -1i8 };
            if last_sign != 0 && s != last_sign {
                sign_changes += 1;
            }
            last_sign = s;
            di += 1;
        }
        let term =
            row1[(prime % q1) as usize] * row2[(prime % q2) as usize] * (prime as f64).ln();
        raw += term;
        if q1 % prime != 0 && q2 % prime != 0 {
            coprime += term;
        }
    }
    while gi < grid.len() {
        snapshot(grid[gi], raw, coprime, &mut rows);
        gi += 1;
    }

    // Fit log |residual/x| = c + e log x.
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            (
                (r.x as f64).ln(),
                r.scaled_residual.abs().max(1e-300).ln(),
            )
        })
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let fitted_exponent = if denom.abs() < 1e-12 {
        0.0
    } else {
        (n * sxy - sx * sy) / denom
    };
    Ok(AgreementReport {
        rows,
        fitted_exponent,
        sign_changes,
    })
}

/// The finite-support Bessel integral of the main term:
/// `I = int J_{k1-1}(4 pi m1 y/(b1 N)) J_{k2-1}(4 pi m2 y/(b2 N))
///      phihat(2 log y / log R) dy / log R`
/// over `y` in `[R^{-sigma/2}, R^{sigma/2}]`.
pub fn i_integral(p: &QStarParams) -> Result<f64> {
    let mut panels_per_half_period = 2.0f64;
    let mut prev = i_integral_with_density(p, panels_per_half_period)?;
    for _ in 0..6 {
        panels_per_half_period *= 2.0;
        let next = i_integral_with_density(p, panels_per_half_period)?;
        if (next - prev).abs() <= 1e-8 * next.abs().max(1e-12) {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

/// Fixed-density variant (panels per Bessel half-period), for convergence
/// order measurements.
pub fn i_integral_with_density(p: &QStarParams, density: f64) -> Result<f64> {
    let log_r = p.log_conductor();
    let sigma = p.phi.sigma();
    let y_hi = (sigma * log_r / 2.0).exp();
    let y_lo = 1.0 / y_hi;
    let omega1 = 4.0 * PI * p.m1 as f64 / ((p.b1 * p.level) as f64);
    let omega2 = 4.0 * PI * p.m2 as f64 / ((p.b2 * p.level) as f64);
    let nu1 = (p.k1 - 1) as u32;
    let nu2 = (p.k2 - 1) as u32;
    let phi = p.phi;
    let integrand = |y: f64| -> f64 {
        bessel_j_unchecked(nu1, omega1 * y)
            * bessel_j_unchecked(nu2, omega2 * y)
            * phi.hat(2.0 * y.ln() / log_r)
            / log_r
    };
    // Half-period of the combined oscillation; the kink of phihat at y = 1
    // splits the domain.
    let half_period = PI / (omega1 + omega2);
    let gl = GaussLegendre::new(32);
    let mut total = 0.0;
    for (a, b) in [(y_lo, 1.0_f64.min(y_hi).max(y_lo)), (1.0f64.max(y_lo), y_hi)] {
        if b <= a {
            continue;
        }
        let panels = (((b - a) / half_period * density).ceil() as usize).clamp(4, 4_000_000);
        total += gl.integrate_panels(a, b, panels, integrand);
    }
    Ok(total)
}

/// Brute-force `Q*`: the Bessel–Kloosterman prime sum weighted by
/// `(2 log p)/(sqrt p log R) phihat(log p / log R)`; finite because the
/// transform vanishes beyond `p = R^sigma`.
pub fn q_star_brute(p: &QStarParams, primes: &PrimeList) -> Result<f64> {
    let (cap, weights) = q_star_weights(p, primes)?;
    let _ = cap;
    Ok(weights.iter().map(|(_, w, g)| w * g).sum())
}

/// Abel-summation reformulation of [`q_star_brute`]: with
/// `A_i = sum_{j <= i} w_j` the sum `sum_i w_i G_i` is regrouped as
/// `A_n G_n - sum_{i < n} A_i (G_{i+1} - G_i)`. Same prime set, different
/// arithmetic route.
pub fn q_star_abel(p: &QStarParams, primes: &PrimeList) -> Result<f64> {
    let (_, weights) = q_star_weights(p, primes)?;
    if weights.is_empty() {
        return Ok(0.0);
    }
    let mut cumulative = 0.0f64;
    let mut acc = 0.0f64;
    for i in 0..weights.len() {
        cumulative += weights[i].1;
        if i + 1 < weights.len() {
            acc -= cumulative * (weights[i + 1].2 - weights[i].2);
        } else {
            acc += cumulative * weights[i].2;
        }
    }
    Ok(acc)
}

/// Shared prime enumeration for the two `Q*` routes: per retained prime,
/// the Kloosterman weight `w_p = S S log p` and the smooth factor
/// `G_p = J J (2/(sqrt p log R)) phihat(log p / log R)`.
#[allow(clippy::type_complexity)]
fn q_star_weights(p: &QStarParams, primes: &PrimeList) -> Result<(u64, Vec<(u64, f64, f64)>)> {
    let log_r = p.log_conductor();
    let sigma = p.phi.sigma();
    let cap_f = (sigma * log_r).exp();
    if cap_f > PRIME_SUM_CAP as f64 {
        return Err(Error::CapExceeded {
            what: "Q* prime range R^sigma",
            limit: PRIME_SUM_CAP,
        });
    }
    let cap = cap_f.floor() as u64;
    if primes.limit() < cap {
        return Err(Error::Domain("sieve does not cover R^sigma"));
    }
    let q1 = p.b1 * p.level;
    let q2 = p.b2 * p.level;
    let row1 = kloosterman_row((p.m1 * p.m1) as i64, q1);
    let row2 = kloosterman_row((p.m2 * p.m2) as i64, q2);
    let nu1 = (p.k1 - 1) as u32;
    let nu2 = (p.k2 - 1) as u32;
    let c1 = 4.0 * PI * p.m1 as f64 / q1 as f64;
    let c2 = 4.0 * PI * p.m2 as f64 / q2 as f64;
    let mut out = Vec::new();
    for &prime in primes.primes() {
        if prime > cap {
            break;
        }
        let hat = p.phi.hat((prime as f64).ln() / log_r);
        if hat == 0.0 {
            continue;
        }
        // log p lives in the Kloosterman weight; G carries the rest.
        let w = row1[(prime % q1) as usize] * row2[(prime % q2) as usize] * (prime as f64).ln();
        let sqrt_p = (prime as f64).sqrt();
        let g = bessel_j_unchecked(nu1, c1 * sqrt_p)
            * bessel_j_unchecked(nu2, c2 * sqrt_p)
            * 2.0
            * hat
            / (sqrt_p * log_r);
        out.push((prime, w, g));
    }
    Ok((cap, out))
}

/// Closed-form main term of `Q*` (the `A` main term integrated against the
/// Bessel weights): `4 psi/phi(d1 d2 r N) R R mu chi_0(r) I`.
pub fn q_star_main(p: &QStarParams) -> Result<f64> {
    let coeff = main_term_coefficient(p);
    if coeff == 0.0 {
        return Ok(0.0);
    }
    Ok(4.0 * coeff * i_integral(p)?)
}

/// The limit target of the averaged prime sum and its finite-level
/// prefactor diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct SymplecticTarget {
    /// `int phi(x) sin(2 pi x)/(2 pi x) dx - phi(0)/2`.
    pub target: f64,
    /// `N psi(1,1,N) / phi(N)^3`, which is `1 + O(1/N)`.
    pub prefactor_ratio: f64,
    /// Whether the support radius sits inside the proven regime
    /// (`sigma < 5/4` for distinct weights, `sigma < 29/28` otherwise).
    pub regime_ok: bool,
}

/// Closed-form symplectic limit target for the averaged `Q*` sum.
pub fn symplectic_limit_target(
    k1: u64,
    k2: u64,
    level: u64,
    phi: &TestFunction,
) -> Result<SymplecticTarget> {
    if !factor(level)?.is_prime() {
        return Err(Error::Domain("level must be prime"));
    }
    let main = ks_main_term(phi);
    let phi_n = (level - 1) as f64;
    let psi11 = psi(1, 1, &factor(level)?, PsiMode::Closed) as f64;
    let sigma = phi.sigma();
    let regime_ok = if k1 != k2 {
        sigma < 1.25
    } else {
        sigma < 29.0 / 28.0
    };
    Ok(SymplecticTarget {
        target: main.s_limit,
        prefactor_ratio: level as f64 * psi11 / (phi_n * phi_n * phi_n),
        regime_ok,
    })
}

/// Truncated quadruple sum approximating the averaged prime sum.
#[derive(Debug, Clone, Copy)]
pub struct QuadrupleSum {
    pub value: f64,
    /// Reported tail budget for the dropped `r > cap_r` terms, using the
    /// displayed decay bound with constant 1.
    pub r_tail_budget: f64,
    /// Reported tail budget for the dropped `m, d > cap` terms.
    pub md_tail_budget: f64,
}

/// Assemble
/// `16 pi^2 i^{k1+k2} psi(1,1,N)/phi(N)^3 sum_m m^{-2}
///  sum_{d1,d2} mu(d1 d2)/(d1 d2)^2 sum_{(r, d1 d2) = 1} psi(m^2,m^2,r)
///  I(m,r,N) / (r^2 phi(r))`
/// with caps on `m`, `d1, d2`, and `r`.
pub fn assemble_quadruple_sum(
    k1: u64,
    k2: u64,
    level: u64,
    phi: &TestFunction,
    cap_m: u64,
    cap_d: u64,
    cap_r: u64,
) -> Result<QuadrupleSum> {
    if !factor(level)?.is_prime() {
        return Err(Error::Domain("level must be prime"));
    }
    let phi_n = (level - 1) as f64;
    let psi11 = psi(1, 1, &factor(level)?, PsiMode::Closed) as f64;
    let prefactor =
        16.0 * PI * PI * i_pow_even(k1 + k2) * psi11 / (phi_n * phi_n * phi_n);

    // Cache I(m, r, N) and psi(m^2, m^2, r); both depend only on (m, r).
    let mut i_cache: Vec<Option<f64>> = vec![None; (cap_m * cap_r + 1) as usize];
    let mut psi_cache: Vec<Option<i64>> = vec![None; (cap_m * cap_r + 1) as usize];
    let mut value = 0.0f64;
    for m in 1..=cap_m {
        if m % level == 0 {
            continue; // the averaged family keeps (m, N) = 1
        }
        let m2 = 1.0 / (m as f64 * m as f64);
        for d1 in 1..=cap_d {
            for d2 in 1..=cap_d {
                if gcd(d1, d2) != 1 {
                    continue;
                }
                let mu = factor(d1 * d2)?.mobius();
                if mu == 0 {
                    continue;
                }
                let dweight =
                    mu as f64 / (d1 as f64 * d1 as f64 * d2 as f64 * d2 as f64);
                let mut r_sum = 0.0f64;
                for r in 1..=cap_r {
                    if gcd(r, d1 * d2) != 1 || r % level == 0 {
                        continue;
                    }
                    let key = ((m - 1) * cap_r + r) as usize;
                    let psi_r = *psi_cache[key].get_or_insert_with(|| {
                        psi((m * m) as i64, (m * m) as i64, &factor(r).expect("r >= 1"), PsiMode::Closed)
                    });
                    if psi_r == 0 {
                        continue;
                    }
                    let i_val = match i_cache[key] {
                        Some(v) => v,
                        None => {
                            let params = QStarParams::new(
                                m, m, r, r, level, k1, k2, *phi,
                            )?;
                            let v = i_integral(&params)?;
                            i_cache[key] = Some(v);
                            v
                        }
                    };
                    let rf = r as f64;
                    let phi_r = factor(r)?.phi() as f64;
                    r_sum += psi_r as f64 / (rf * rf * phi_r) * i_val;
                }
                value += m2 * dweight * r_sum;
            }
        }
    }
    value *= prefactor;

    // Reported budgets (displayed decay bounds with constant 1):
    // |I(m,r,N)| <= m^2 r^{-2} N^{3 sigma - 2} and psi(m^2,m^2,r) <= r^2,
    // phi(r) >= sqrt(r) for r >= 7.
    let sigma = phi.sigma();
    let n_pow = (level as f64).powf(3.0 * sigma - 2.0);
    let zeta2 = crate::special::zeta(2.0);
    let pref_abs = 16.0 * PI * PI * psi11 / (phi_n * phi_n * phi_n);
    let r_tail_budget = pref_abs
        * cap_m as f64
        * zeta2
        * zeta2
        * n_pow
        * (2.0 / (1.5 * (cap_r as f64).powf(1.5)));
    let md_tail_budget =
        pref_abs * n_pow * zeta2 * zeta2 * 3.0 / cap_m.min(cap_d) as f64;
    Ok(QuadrupleSum {
        value,
        r_tail_budget,
        md_tail_budget,
    })
}
