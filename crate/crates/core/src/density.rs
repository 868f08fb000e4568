//! Symplectic density arithmetic: the Katz–Sarnak density `W(Sp)` and its
//! Fourier transform, the Fejér test-function family (with imaginary-argument
//! evaluation for pole terms), analytic conductors, closed-form main terms,
//! nonvanishing lower bounds, and the Euler factors behind the pole term.

use alloc::vec;
use alloc::vec::Vec;

// Needed for f64 method resolution under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use num_rational::Ratio;

use crate::arith::{factor, gcd, FactoredInteger};
use crate::error::{Error, Result};
use crate::special::{prime_zeta, zeta, ZETA3};
use crate::Complex64;

use core::f64::consts::PI;

/// Exact rational used for nonvanishing bounds and corollary constants.
pub type Rational = Ratio<i64>;

/// The Fejér test function `phi_sigma(x) = (sin(pi sigma x)/(pi sigma x))^2`,
/// whose Fourier transform is the triangle `(sigma - |y|)/sigma^2` on
/// `|y| < sigma`. The only built-in family; every quantitative claim uses it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    sigma: f64,
}

/// Argument for [`TestFunction::eval_at`]: the extension of `phi` to complex
/// arguments is only needed (and only defined here) on the two axes.
#[derive(Debug, Clone, Copy)]
pub enum Axis {
    Real(f64),
    /// `Imaginary(t)` stands for the point `i t`.
    Imaginary(f64),
}

impl TestFunction {
    pub fn fejer(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Domain("support radius sigma must be positive"));
        }
        Ok(TestFunction { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `phi(x)` for real `x`; the removable singularity at 0 evaluates to 1.
    pub fn eval(&self, x: f64) -> f64 {
        let u = PI * self.sigma * x;
        if u.abs() < 1e-8 {
            // sin(u)/u = 1 - u^2/6 + O(u^4)
            let r = 1.0 - u * u / 6.0;
            return r * r;
        }
        let r = u.sin() / u;
        r * r
    }

    /// `phi(i t) = (sinh(pi sigma t)/(pi sigma t))^2`, from the inverse
    /// Fourier transform extended to the imaginary axis.
    pub fn eval_imaginary(&self, t: f64) -> f64 {
        let u = PI * self.sigma * t;
        if u.abs() < 1e-8 {
            let r = 1.0 + u * u / 6.0;
            return r * r;
        }
        let r = u.sinh() / u;
        r * r
    }

    /// Evaluate on either axis.
    pub fn eval_at(&self, z: Axis) -> f64 {
        match z {
            Axis::Real(x) => self.eval(x),
            Axis::Imaginary(t) => self.eval_imaginary(t),
        }
    }

    /// Checked complex entry point; arguments off both axes are out of scope.
    pub fn eval_complex(&self, z: Complex64) -> Result<f64> {
        if z.im == 0.0 {
            Ok(self.eval(z.re))
        } else if z.re == 0.0 {
            Ok(self.eval_imaginary(z.im))
        } else {
            Err(Error::Domain(
                "test function is only evaluated on the real or imaginary axis",
            ))
        }
    }

    /// The Fourier transform: `(sigma - |y|)/sigma^2` inside the support,
    /// 0 outside (continuous at the edge).
    pub fn hat(&self, y: f64) -> f64 {
        let a = y.abs();
        if a >= self.sigma {
            0.0
        } else {
            (self.sigma - a) / (self.sigma * self.sigma)
        }
    }

    /// `phihat(0) = 1/sigma`.
    pub fn hat_zero(&self) -> f64 {
        1.0 / self.sigma
    }
}

/// The symplectic density `W(Sp)(x) = 1 - sin(2 pi x)/(2 pi x)`.
pub fn w_sp(x: f64) -> f64 {
    let u = 2.0 * PI * x;
    if u.abs() < 1e-8 {
        return u * u / 6.0;
    }
    1.0 - u.sin() / u
}

/// The distributional Fourier transform of `W(Sp)`: a unit point mass at 0
/// plus the density `-eta(y)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WSpHat {
    pub delta_mass: f64,
    pub density: f64,
}

/// `What(Sp)(y) = delta(y) - eta(y)/2`; the discontinuity at `|y| = 1` takes
/// the symmetric value `-1/4` (a convention, nothing downstream depends on it).
pub fn w_sp_hat(y: f64) -> WSpHat {
    let a = y.abs();
    let density = if a < 1.0 {
        -0.5
    } else if a == 1.0 {
        -0.25
    } else {
        0.0
    };
    WSpHat {
        delta_mass: 1.0,
        density,
    }
}

/// Closed-form main terms attached to a Fejér test function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainTerm {
    /// `int phi(x) W(Sp)(x) dx`.
    pub density_integral: f64,
    /// `int phi(x) sin(2 pi x)/(2 pi x) dx - phi(0)/2`, the off-diagonal
    /// limit target; 0 for `sigma <= 1` and negative beyond.
    pub s_limit: f64,
}

/// Katz–Sarnak main term for the Fejér family:
/// `1/sigma - 1/2` for `sigma <= 1`, `1/sigma - (2 sigma - 1)/(2 sigma^2)`
/// beyond. The two scalars satisfy
/// `density_integral = phihat(0) - phi(0)/2 - s_limit` exactly.
pub fn ks_main_term(phi: &TestFunction) -> MainTerm {
    let sigma = phi.sigma();
    let sinc_mass = if sigma <= 1.0 {
        // The whole triangle sits inside (-1, 1): int phi sinc = 1/2.
        0.5
    } else {
        (2.0 * sigma - 1.0) / (2.0 * sigma * sigma)
    };
    let density_integral = phi.hat_zero() - sinc_mass;
    let s_limit = sinc_mass - 0.5;
    debug_assert!((density_integral - (phi.hat_zero() - 0.5 - s_limit)).abs() < 1e-15);
    MainTerm {
        density_integral,
        s_limit,
    }
}

/// Lower bound for the nonvanishing proportion at support radius `sigma`:
/// `5/4 - 1/(2 sigma)` below 1, `1 - 1/(4 sigma^2)` from 1 on. Exact
/// rational arithmetic; both branches give `3/4` at `sigma = 1`.
pub fn nonvanishing_bound(sigma: Rational) -> Result<Rational> {
    if sigma <= Ratio::new(0, 1) {
        return Err(Error::Domain("sigma must be positive"));
    }
    let one = Ratio::new(1, 1);
    Ok(if sigma < one {
        Ratio::new(5, 4) - one / (Ratio::new(2, 1) * sigma)
    } else {
        one - one / (Ratio::new(4, 1) * sigma * sigma)
    })
}

/// One row of the corollary table: a regime, its nonvanishing constant, the
/// support radius it comes from, and the printed decimal.
#[derive(Debug, Clone, Copy)]
pub struct CorollaryRow {
    pub regime: &'static str,
    pub c0: Rational,
    pub sigma: Rational,
    pub printed: f64,
}

/// The four headline constants with their support-radius provenance. Each
/// `c0` equals `nonvanishing_bound(sigma)` by construction.
pub fn corollary_constants() -> Vec<CorollaryRow> {
    vec![
        CorollaryRow {
            regime: "level-limit, distinct weights",
            c0: Ratio::new(21, 25),
            sigma: Ratio::new(5, 4),
            printed: 0.84,
        },
        CorollaryRow {
            regime: "level-limit, equal weights",
            c0: Ratio::new(645, 841),
            sigma: Ratio::new(29, 28),
            printed: 0.7669,
        },
        CorollaryRow {
            regime: "weight-limit, bounded gap",
            c0: Ratio::new(3, 4),
            sigma: Ratio::new(1, 1),
            printed: 0.75,
        },
        CorollaryRow {
            regime: "general",
            c0: Ratio::new(1, 4),
            sigma: Ratio::new(1, 2),
            printed: 0.25,
        },
    ]
}

/// Analytic-conductor data for a pair of weights and prime (or unit) levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConductorSpec {
    pub k1: u64,
    pub k2: u64,
    pub n1: u64,
    pub n2: u64,
    /// `(N1,N2)^2 (k1-k2)^2 (k1+k2)^2` for distinct weights, else
    /// `(N1,N2)^2 k1^2`.
    pub r: u64,
}

impl ConductorSpec {
    pub fn new(k1: u64, k2: u64, n1: u64, n2: u64) -> Result<Self> {
        if k1 % 2 != 0 || k2 % 2 != 0 || k1 < 2 || k2 < 2 {
            return Err(Error::Domain("weights must be even and at least 2"));
        }
        for n in [n1, n2] {
            if n != 1 && !factor(n)?.is_prime() {
                return Err(Error::Domain("levels must be 1 or prime"));
            }
        }
        let g = gcd(n1, n2);
        let r = if k1 != k2 {
            let d = k1.abs_diff(k2);
            let s = k1 + k2;
            g.checked_mul(g)
                .and_then(|x| x.checked_mul(d * d))
                .and_then(|x| x.checked_mul(s * s))
                .ok_or(Error::Overflow("conductor"))?
        } else {
            g.checked_mul(g)
                .and_then(|x| x.checked_mul(k1 * k1))
                .ok_or(Error::Overflow("conductor"))?
        };
        Ok(ConductorSpec { k1, k2, n1, n2, r })
    }

    /// Re-verify a stored conductor against the defining parameters.
    pub fn verify_stored(&self) -> Result<()> {
        let fresh = ConductorSpec::new(self.k1, self.k2, self.n1, self.n2)?;
        if fresh.r != self.r {
            return Err(Error::Inconsistent(alloc::format!(
                "stored conductor {} but parameters give {}",
                self.r,
                fresh.r
            )));
        }
        Ok(())
    }

    /// Whether the attached Rankin–Selberg family carries poles
    /// (`(k1, N1) = (k2, N2)`).
    pub fn has_pole(&self) -> bool {
        self.k1 == self.k2 && self.n1 == self.n2
    }
}

/// The three Euler factors of the pole analysis at a point `s`.
#[derive(Debug, Clone, Copy)]
pub struct EulerFactors {
    /// `zeta_d(s) = prod_{p|d} (1 - p^{-s})^{-1}` (finite, exact).
    pub zeta_d: Complex64,
    /// `alpha_d(s) = prod_{p not | d} [1 - (1 - p^{-s})/(p phi(p) p^s)]`,
    /// truncated at `p_max`.
    pub alpha_d: Complex64,
    /// `beta_d(s) = prod_{p|d} (1 + p^{-s})` (finite, exact).
    pub beta_d: Complex64,
    /// Crude bound on the neglected alpha tail, `O(sum_{p>P} p^{-2-Re s})`.
    pub alpha_tail_estimate: f64,
}

/// Evaluate `zeta_d`, `alpha_d`, `beta_d` at `s`; `alpha` requires
/// `Re(s) > -1/2` for convergence.
pub fn euler_factors(d: &FactoredInteger, s: Complex64, p_max: u64) -> Result<EulerFactors> {
    if s.re <= -0.5 {
        return Err(Error::StripViolation("alpha_d needs Re(s) > -1/2"));
    }
    let mut zeta_d = Complex64::new(1.0, 0.0);
    let mut beta_d = Complex64::new(1.0, 0.0);
    for &(p, _) in d.factors() {
        let ps = (-s * (p as f64).ln()).exp();
        zeta_d /= 1.0 - ps;
        beta_d *= 1.0 + ps;
    }
    let primes = crate::arith::primes_up_to(p_max)?;
    let mut alpha_d = Complex64::new(1.0, 0.0);
    for &p in primes.primes() {
        if d.divisible_by(p) {
            continue;
        }
        let pf = p as f64;
        let ps = (-s * pf.ln()).exp();
        alpha_d *= 1.0 - (1.0 - ps) * ps / (pf * (pf - 1.0));
    }
    let pf = p_max.max(2) as f64;
    let alpha_tail_estimate = pf.powf(-1.0 - s.re) / ((1.0 + s.re) * pf.ln());
    Ok(EulerFactors {
        zeta_d,
        alpha_d,
        beta_d,
        alpha_tail_estimate,
    })
}

/// Results of the two routes to the pole constant `6/pi^2`.
#[derive(Debug, Clone, Copy)]
pub struct PoleProduct {
    /// `zeta(3)^{-1} prod_{p <= P} (1-p^{-2})/(1-p^{-3})`, raw truncation.
    pub product_truncated: f64,
    /// The same product completed with the analytic prime-zeta tail.
    pub product_completed: f64,
    /// Triple sum over `(m, d1, d2)` up to `d_max` with exact per-term
    /// Euler factors truncated at `p_max`.
    pub triple_sum: f64,
    /// Rigorous bound on the triple sum's truncation error.
    pub triple_tail_budget: f64,
}

/// Evaluate the pole Euler product both as the per-prime closed form and as
/// the truncated `(m, d1, d2)` triple sum. Both converge to `6/pi^2`.
pub fn pole_euler_product(p_max: u64, d_max: u64) -> Result<PoleProduct> {
    if p_max < 1000 || d_max < 1000 {
        return Err(Error::Domain("caps must be at least 10^3"));
    }
    if p_max < d_max {
        return Err(Error::Domain("p_max must cover the support of d_max"));
    }
    let primes = crate::arith::primes_up_to(p_max)?;

    // Closed form: zeta(3)^{-1} prod_p (1 - p^{-2})/(1 - p^{-3}).
    let mut log_prod = 0.0f64;
    let mut partial = [0.0f64; 13]; // partial[j] = sum_{p <= P} p^{-j}
    for &p in primes.primes() {
        let pf = p as f64;
        log_prod += (1.0 - pf.powi(-2)).ln() - (1.0 - pf.powi(-3)).ln();
        for (j, slot) in partial.iter_mut().enumerate().skip(2) {
            *slot += pf.powi(-(j as i32));
        }
    }
    let product_truncated = log_prod.exp() / ZETA3;
    // Tail over p > P: -sum_k (1/k) [S(2k) - S(3k)] with S(j) the prime-zeta
    // tail; k = 1, 2 suffice far below 1e-15 at P >= 10^3.
    let tail_s = |j: usize| prime_zeta(j as f64) - partial[j];
    let log_tail = -(tail_s(2) - tail_s(3)) - 0.5 * (tail_s(4) - tail_s(6));
    let product_completed = (log_prod + log_tail).exp() / ZETA3;

    // Triple sum over (m, d1, d2) up to d_max. Each term is
    //   mu(d1 d2)/(d1 d2)^2 m^{-2} zeta_v(1)^{-1} alpha_v(1) beta_w(2),
    // v = m d1 d2 and w the primes of m away from d1 d2. The factors depend
    // only on prime supports:
    //   zeta_v(1)^{-1} alpha_v(1) = alpha_full * prod_{p | v} g(p),
    //   g(p) = (1 - 1/p)/(1 - p^{-3}),
    // so the sum is regrouped exactly as
    //   alpha_full * sum_{v squarefree} mu(v) c(v)/v^2 G(v)
    //                * sum_{u | v} t(u) B(u)
    // with c(v) the number of admissible (d1, d2) splits, G(v) = prod g(p),
    // B(u) = sum_{m <= d_max, u | m} W(m)/m^2, W(m) = prod_{p|m} g(p)(1+p^{-2}),
    // and t multiplicative with t(p) = 1/(g(p)(1+p^{-2})) - 1. This is a
    // divisor-transform regrouping of the same finite sum, term for term.
    let alpha_full: f64 = primes
        .primes()
        .iter()
        .map(|&p| 1.0 - (p as f64).powi(-3))
        .product();
    let d = d_max as usize;
    let v_max = d * d;
    let g_of = |p: f64| (1.0 - 1.0 / p) / (1.0 - p.powi(-3));
    let w_of = |p: f64| g_of(p) * (1.0 + p.powi(-2));

    // W(m) and mu(m) for m <= d_max^2 by a smallest-prime-factor sieve.
    let mut spf = vec![0u32; v_max + 1];
    for p in 2..=v_max {
        if spf[p] == 0 {
            for m in (p..=v_max).step_by(p) {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
            }
        }
    }
    let mut w_table = vec![1.0f64; d + 1];
    let mut mu_table = vec![0i8; v_max + 1];
    mu_table[1] = 1;
    for m in 2..=v_max {
        let p = spf[m] as usize;
        let rest = m / p;
        mu_table[m] = if rest % p == 0 { 0 } else { -mu_table[rest] };
        if m <= d {
            w_table[m] = w_table[rest] * if rest % p == 0 { 1.0 } else { w_of(p as f64) };
        }
    }
    // B(u) for u <= d_max (only divisors of m <= d_max matter).
    let mut b_table = vec![0.0f64; d + 1];
    for u in 1..=d {
        let mut acc = 0.0;
        let mut m = u;
        while m <= d {
            acc += w_table[m] / (m as f64 * m as f64);
            m += u;
        }
        b_table[u] = acc;
    }

    let mut triple_sum = 0.0f64;
    let mut v_primes: Vec<usize> = Vec::new();
    for v in 1..=v_max {
        if mu_table[v] == 0 {
            continue;
        }
        // Number of (d1, d2) splits of v with both parts <= d_max, and the
        // divisor transform sum_{u | v} t(u) B(u) in the same divisor walk.
        v_primes.clear();
        let mut rest = v;
        while rest > 1 {
            let p = spf[rest] as usize;
            v_primes.push(p);
            rest /= p;
        }
        let mut splits = 0u64;
        let mut inner = 0.0f64;
        let n_div = 1usize << v_primes.len();
        for mask in 0..n_div {
            let mut u = 1usize;
            for (i, &p) in v_primes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    u *= p;
                }
            }
            if u <= d && v / u <= d {
                splits += 1;
            }
            if u <= d {
                let mut t = 1.0f64;
                for (i, &p) in v_primes.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        t *= 1.0 / w_of(p as f64) - 1.0;
                    }
                }
                inner += t * b_table[u];
            }
        }
        if splits == 0 {
            continue;
        }
        let g_v: f64 = v_primes.iter().map(|&p| g_of(p as f64)).product();
        let vf = v as f64;
        triple_sum +=
            mu_table[v] as f64 * splits as f64 / (vf * vf) * g_v * inner;
    }
    triple_sum *= alpha_full;
    // sup |zeta^{-1} alpha beta| <= zeta(3)^{-1} zeta(2)/zeta(4).
    let c_sup = (1.0 / ZETA3) * zeta(2.0) / zeta(4.0);
    let tail = 1.0 / d_max as f64;
    let z2 = zeta(2.0);
    let triple_tail_budget = c_sup * 3.0 * z2 * z2 * tail;
    Ok(PoleProduct {
        product_truncated,
        product_completed,
        triple_sum,
        triple_tail_budget,
    })
}

/// Both sides of the per-prime simplification
/// `f(p) - (2/p^2) (p^3-p^2)/(p^3-1) / (1-p^{-2}) = (1-p^{-2})/(1-p^{-3})`
/// in exact rational arithmetic.
pub fn pole_prime_identity(p: u64) -> (Ratio<i128>, Ratio<i128>) {
    let p = p as i128;
    let one = Ratio::new(1, 1);
    let p2 = Ratio::new(p * p, 1);
    let p3 = Ratio::new(p * p * p, 1);
    // f(p) = 1 + (p^3 - p^2)/(p^3 - 1) * (p^2 + 1)/p^2 * 1/(p^2 - 1)
    let f = one
        + (p3 - p2) / (p3 - one) * ((p2 + one) / p2) * (one / (p2 - one));
    let correction =
        Ratio::new(2, p * p) * ((p3 - p2) / (p3 - one)) * (one / (one - one / p2));
    let lhs = f - correction;
    let rhs = (one - one / p2) / (one - one / p3);
    (lhs, rhs)
}

/// Family-normalized pole contribution
/// `2 / |H*_k(N)| * phi(log R / (4 pi) i)` with the leading-term family size
/// `(k-1) phi(N) / 12`. Requires a spec that actually has a pole.
pub fn pole_term(spec: &ConductorSpec, phi: &TestFunction) -> Result<f64> {
    if !spec.has_pole() {
        return Err(Error::Domain("pole term requires (k1, N1) = (k2, N2)"));
    }
    let k = spec.k1;
    let phi_n = factor(spec.n1)?.phi() as f64;
    let family_size = (k - 1) as f64 * phi_n / 12.0;
    let t = (spec.r as f64).ln() / (4.0 * PI);
    Ok(2.0 / family_size * phi.eval_imaginary(t))
}
