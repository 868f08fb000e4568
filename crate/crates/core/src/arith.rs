//! Exact 64-bit integer arithmetic: factorization, multiplicative functions,
//! gcd variants, modular inverses, primitive roots, and prime sieving.
//!
//! All arithmetic is checked; overflow is reported as an error, never wrapped.

use alloc::vec;
use alloc::vec::Vec;

// Needed for f64 method resolution under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest `x` accepted by [`primes_up_to`].
pub const SIEVE_CAP: u64 = 1_000_000_000;

/// Sieve block size (cache-friendly segmentation).
const SIEVE_BLOCK: u64 = 1 << 20;

/// Trial-division bound used before switching to Pollard rho.
const TRIAL_BOUND: u64 = 1_000_000;

/// Euclidean gcd on unsigned operands. `gcd(0, n) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// gcd for possibly negative first operand, as needed by Ramanujan sums
/// of shifted arguments. Returns a non-negative value.
pub fn gcd_i64(a: i64, b: u64) -> u64 {
    gcd(a.unsigned_abs(), b)
}

/// `(a * b) mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` by binary exponentiation.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin primality test, valid for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    // Witness set covering the full u64 range.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho (Brent's cycle variant). `n` must be composite, odd, > 1.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// A positive integer together with its full prime factorization.
///
/// Invariants: the product of `p^e` equals `value`, primes strictly
/// increasing, exponents at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

/// Factor `n` by trial division up to 10^6 followed by Pollard rho with a
/// deterministic Miller–Rabin split. `factor(1)` has an empty factor list.
pub fn factor(n: u64) -> Result<FactoredInteger> {
    FactoredInteger::new(n)
}

impl FactoredInteger {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("factor(0) is undefined"));
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        let push = |p: u64, e: u32, factors: &mut Vec<(u64, u32)>| {
            if let Some(last) = factors.last_mut() {
                if last.0 == p {
                    last.1 += e;
                    return;
                }
            }
            factors.push((p, e));
        };
        for p in core::iter::once(2).chain((3..=TRIAL_BOUND).step_by(2)) {
            if p * p > m {
                break;
            }
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                push(p, e, &mut factors);
            }
        }
        if m > 1 {
            if m <= TRIAL_BOUND * TRIAL_BOUND || is_prime(m) {
                // Either below the trial square (hence prime) or certified prime.
                push(m, 1, &mut factors);
            } else {
                let mut stack = vec![m];
                let mut large: Vec<u64> = Vec::new();
                while let Some(x) = stack.pop() {
                    if is_prime(x) {
                        large.push(x);
                    } else {
                        let d = pollard_rho(x);
                        stack.push(d);
                        stack.push(x / d);
                    }
                }
                large.sort_unstable();
                for p in large {
                    push(p, 1, &mut factors);
                }
            }
        }
        factors.sort_unstable_by_key(|&(p, _)| p);
        Ok(FactoredInteger { value: n, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs sorted by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Euler totient.
    pub fn phi(&self) -> u64 {
        let mut acc = 1u64;
        for &(p, e) in &self.factors {
            acc *= p.pow(e - 1) * (p - 1);
        }
        acc
    }

    /// Möbius function: 0 on non-squarefree, otherwise parity of the
    /// prime-factor count.
    pub fn mobius(&self) -> i64 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Divisor count.
    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| (e + 1) as u64).product()
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = out.len();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                for i in 0..prev {
                    out.push(out[i] * pe);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Whether `p` divides the value (`p` need not be prime).
    pub fn divisible_by(&self, d: u64) -> bool {
        d != 0 && self.value % d == 0
    }
}

/// `(phi, mu, tau)` computed from the factorization.
pub fn multiplicative_functions(n: &FactoredInteger) -> (u64, i64, u64) {
    (n.phi(), n.mobius(), n.tau())
}

/// The stabilized gcd `(x, y^inf)`: the largest divisor of `x` whose prime
/// support is contained in the support of `y`.
pub fn inf_gcd(x: u64, y: u64) -> u64 {
    debug_assert!(x >= 1 && y >= 1);
    let mut acc = 1u64;
    let mut rest = x;
    loop {
        let g = gcd(rest, y);
        if g == 1 {
            return acc;
        }
        acc *= g;
        rest /= g;
    }
}

/// Modular inverse normalized to `[1, q]`, via the extended Euclidean
/// algorithm. Errors when `gcd(a, q) > 1`.
pub fn mod_inverse(a: i64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive"));
    }
    if q == 1 {
        return Ok(1);
    }
    let a_red = a.rem_euclid(q as i64) as u64;
    let (mut r0, mut r1) = (q as i64, a_red as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime {
            a: a_red,
            modulus: q,
        });
    }
    let inv = t0.rem_euclid(q as i64) as u64;
    Ok(if inv == 0 { q } else { inv })
}

/// Ascending list of all primes up to a limit.
#[derive(Debug, Clone)]
pub struct PrimeList {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeList {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Segmented sieve of Eratosthenes in blocks of 2^20, capped at 10^9.
pub fn primes_up_to(x: u64) -> Result<PrimeList> {
    if x > SIEVE_CAP {
        return Err(Error::CapExceeded {
            what: "sieve limit",
            limit: SIEVE_CAP,
        });
    }
    if x < 2 {
        return Ok(PrimeList {
            limit: x,
            primes: Vec::new(),
        });
    }
    // Base primes up to sqrt(x) by a plain sieve.
    let root = isqrt(x);
    let mut base_composite = vec![false; root as usize + 1];
    let mut base: Vec<u64> = Vec::new();
    for p in 2..=root {
        if !base_composite[p as usize] {
            base.push(p);
            let mut m = p * p;
            while m <= root {
                base_composite[m as usize] = true;
                m += p;
            }
        }
    }
    let mut primes: Vec<u64> = Vec::new();
    let mut segment = vec![false; SIEVE_BLOCK as usize];
    let mut low = 2u64;
    while low <= x {
        let high = (low + SIEVE_BLOCK - 1).min(x);
        let len = (high - low + 1) as usize;
        segment[..len].fill(false);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut m = (low.div_ceil(p) * p).max(p * p);
            while m <= high {
                segment[(m - low) as usize] = true;
                m += p;
            }
        }
        for (i, &c) in segment[..len].iter().enumerate() {
            if !c {
                let n = low + i as u64;
                if n >= 2 {
                    primes.push(n);
                }
            }
        }
        low = high + 1;
    }
    Ok(PrimeList { limit: x, primes })
}

/// Integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Divisor-count table `tau[0..=limit]` by the divisor sieve (`tau[0] = 0`).
pub fn divisor_count_sieve(limit: usize) -> Vec<u32> {
    let mut tau = vec![0u32; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            tau[m] += 1;
        }
    }
    tau
}

/// Smallest generator of the unit group modulo `q`, for the moduli where
/// that group is cyclic (1, 2, 4, odd prime powers, and their doubles).
pub fn primitive_root(q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive"));
    }
    if q <= 2 {
        return Ok(1);
    }
    if q == 4 {
        return Ok(3);
    }
    let fq = FactoredInteger::new(q)?;
    let odd_part: Vec<_> = fq.factors.iter().filter(|&&(p, _)| p != 2).collect();
    let two_exp = fq
        .factors
        .iter()
        .find(|&&(p, _)| p == 2)
        .map_or(0, |&(_, e)| e);
    let cyclic = match (odd_part.len(), two_exp) {
        (1, 0) | (1, 1) => true,
        _ => false,
    };
    if !cyclic {
        return Err(Error::NotCyclic(q));
    }
    let phi = fq.phi();
    let phi_primes: Vec<u64> = FactoredInteger::new(phi)?
        .factors
        .iter()
        .map(|&(p, _)| p)
        .collect();
    for g in 2..q {
        if gcd(g, q) != 1 {
            continue;
        }
        if phi_primes.iter().all(|&ell| pow_mod(g, phi / ell, q) != 1) {
            return Ok(g);
        }
    }
    Err(Error::NotCyclic(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factor_examples() {
        assert!(factor(0).is_err());
        assert_eq!(factor(1).unwrap().factors(), &[]);
        assert_eq!(factor(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        // 2^61 - 1 is a Mersenne prime; confirm via the deterministic test.
        let m61 = (1u64 << 61) - 1;
        assert!(is_prime(m61));
        assert_eq!(factor(m61).unwrap().factors(), &[(m61, 1)]);
    }

    #[test]
    fn factor_large_composites() {
        // Semiprime beyond the trial bound squared is split by rho.
        let p = 2_147_483_647u64; // 2^31 - 1
        let q = 2_147_483_629u64;
        let f = factor(p * q).unwrap();
        assert_eq!(f.factors(), &[(q, 1), (p, 1)]);
        let f = factor(u64::MAX).unwrap();
        let prod: u128 = f
            .factors()
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product();
        assert_eq!(prod, u64::MAX as u128);
    }

    fn phi_brute(n: u64) -> u64 {
        (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
    }

    fn mu_brute(n: u64) -> i64 {
        let mut m = n;
        let mut k = 0;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                k += 1;
            }
            p += 1;
        }
        if m > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn tau_brute(n: u64) -> u64 {
        (1..=n).filter(|&d| n % d == 0).count() as u64
    }

    #[test]
    fn multiplicative_function_examples() {
        for (n, want) in [(1u64, (1, 1, 1)), (12, (4, 0, 6)), (30, (8, -1, 8))] {
            let f = factor(n).unwrap();
            assert_eq!(multiplicative_functions(&f), want, "n = {n}");
        }
    }

    #[test]
    fn multiplicative_functions_match_brute_force() {
        for n in 1..=10_000u64 {
            let f = factor(n).unwrap();
            assert_eq!(f.phi(), phi_brute(n), "phi({n})");
            assert_eq!(f.mobius(), mu_brute(n), "mu({n})");
        }
        // Divisor counting by full scan is quadratic; spot-check a subrange.
        for n in 1..=2_000u64 {
            assert_eq!(factor(n).unwrap().tau(), tau_brute(n), "tau({n})");
        }
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        let f = factor(360).unwrap();
        let d = f.divisors();
        assert_eq!(d.len() as u64, f.tau());
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert!(d.iter().all(|&x| 360 % x == 0));
    }

    fn inf_gcd_brute(x: u64, y: u64) -> u64 {
        // Iterate gcd(x, y^n) until stable.
        let mut acc = gcd(x, y);
        let mut yn = y as u128;
        loop {
            yn = yn.saturating_mul(y as u128).min(u128::MAX / 2);
            let g = {
                let (mut a, mut b) = (x as u128, yn);
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                a as u64
            };
            if g == acc {
                return acc;
            }
            acc = g;
        }
    }

    #[test]
    fn inf_gcd_examples() {
        assert_eq!(inf_gcd(12, 18), 12);
        assert_eq!(inf_gcd(12, 5), 1);
        assert_eq!(inf_gcd(8, 2), 8);
        assert_eq!(inf_gcd_brute(12, 18), 12);
        assert_eq!(inf_gcd_brute(8, 2), 8);
    }

    #[test]
    fn inf_gcd_properties() {
        for x in 1..200u64 {
            for y in 1..60u64 {
                let g = inf_gcd(x, y);
                assert_eq!(x % g, 0);
                assert_eq!(gcd(x / g, y), 1, "cofactor coprime to y, x={x} y={y}");
                // Support of g lies in the support of y.
                let mut m = g;
                let mut d = 2;
                while d * d <= m {
                    while m % d == 0 {
                        assert_eq!(y % d, 0, "prime {d} of inf_gcd({x},{y}) misses y");
                        m /= d;
                    }
                    d += 1;
                }
                if m > 1 {
                    assert_eq!(y % m, 0);
                }
                assert_eq!(g, inf_gcd_brute(x, y));
            }
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(1, 13).unwrap(), 1);
        assert_eq!(mod_inverse(1, 1).unwrap(), 1);
        assert!(matches!(
            mod_inverse(2, 4),
            Err(Error::NotCoprime { a: 2, modulus: 4 })
        ));
        assert_eq!(mod_inverse(-3, 7).unwrap(), 2); // -3 = 4, 4*2 = 8 = 1 (7)
    }

    #[test]
    fn mod_inverse_all_coprime_pairs_small() {
        for q in 2..=500u64 {
            for a in 1..=q {
                if gcd(a, q) == 1 {
                    let inv = mod_inverse(a as i64, q).unwrap();
                    assert!(inv >= 1 && inv <= q);
                    assert_eq!(mul_mod(a, inv, q), 1);
                }
            }
        }
    }

    #[test]
    fn primes_up_to_examples() {
        assert_eq!(primes_up_to(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(primes_up_to(100).unwrap().len(), 25);
        assert_eq!(primes_up_to(1_000_000).unwrap().len(), 78_498);
        assert!(primes_up_to(SIEVE_CAP + 1).is_err());
        assert!(primes_up_to(1).unwrap().is_empty());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_up_to(100_000).unwrap();
        let brute: Vec<u64> = (2..=100_000u64)
            .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(sieved.primes(), brute.as_slice());
    }

    #[test]
    fn sieve_crosses_block_boundaries() {
        let limit = (1 << 20) + 1000;
        let list = primes_up_to(limit).unwrap();
        for w in list.primes().windows(2) {
            assert!(w[0] < w[1]);
        }
        for &p in list.primes().iter().rev().take(50) {
            assert!(is_prime(p));
        }
        let count_below = list.primes().iter().filter(|&&p| p <= 1 << 20).count();
        assert_eq!(count_below, primes_up_to(1 << 20).unwrap().len());
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(4).unwrap(), 3);
        assert!(matches!(primitive_root(8), Err(Error::NotCyclic(8))));
        assert!(matches!(primitive_root(12), Err(Error::NotCyclic(12))));
        assert_eq!(primitive_root(2).unwrap(), 1);
        assert_eq!(primitive_root(9).unwrap(), 2);
        assert_eq!(primitive_root(18).unwrap(), 5);
    }

    #[test]
    fn primitive_root_generates_full_group() {
        for q in [3u64, 5, 9, 25, 27, 49, 6, 10, 18, 50, 101, 121] {
            let g = primitive_root(q).unwrap();
            let phi = factor(q).unwrap().phi();
            let mut seen = alloc::collections::BTreeSet::new();
            let mut x = 1u64;
            for _ in 0..phi {
                x = mul_mod(x, g, q);
                seen.insert(x);
            }
            assert_eq!(seen.len() as u64, phi, "g={g} does not generate mod {q}");
        }
    }

    #[test]
    fn divisor_sieve_matches_factorization() {
        let tau = divisor_count_sieve(3000);
        for n in 1..=3000usize {
            assert_eq!(tau[n] as u64, factor(n as u64).unwrap().tau());
        }
    }

    proptest! {
        #[test]
        fn factorization_reconstructs_value(n in 1u64..1_000_000_000_000) {
            let f = factor(n).unwrap();
            let prod: u128 = f.factors().iter().map(|&(p, e)| (p as u128).pow(e)).product();
            prop_assert_eq!(prod, n as u128);
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.factors().iter().all(|&(p, _)| is_prime(p)));
        }

        #[test]
        fn phi_is_multiplicative_on_coprime_pairs(m in 1u64..30_000, n in 1u64..30_000) {
            prop_assume!(gcd(m, n) == 1);
            let fm = factor(m).unwrap();
            let fn_ = factor(n).unwrap();
            let fmn = factor(m * n).unwrap();
            prop_assert_eq!(fm.phi() * fn_.phi(), fmn.phi());
        }
    }
}
