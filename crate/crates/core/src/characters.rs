//! Dirichlet character groups modulo `q`.
//!
//! Characters are exponent vectors on fixed CRT generators, not value
//! tables: one generator per odd prime-power component, the `{-1, 5}` pair
//! for `2^a` with `a >= 3`. Values are computed as `e(2 pi i t)` with `t`
//! an exactly reduced rational, so long character sums accumulate no phase
//! error beyond the single transcendental call per term.

use alloc::vec;
use alloc::vec::Vec;

// Needed for f64 method resolution under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::{gcd, mod_inverse, mul_mod, primitive_root, FactoredInteger};
use crate::error::{Error, Result};
use crate::Complex64;

const NON_UNIT: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Component {
    prime_power: u64,
    /// Generator orders, one or two entries; the product is phi(prime_power).
    orders: Vec<u64>,
    /// CRT lifts of the local generators to residues modulo q.
    global_gens: Vec<u64>,
    /// Discrete logs: `dlog[g * prime_power + r]` is the exponent of local
    /// residue `r` on generator `g`, or `NON_UNIT`.
    dlog: Vec<u32>,
}

/// The full group of Dirichlet characters modulo `q`, with deterministic
/// (lexicographic in exponent vectors) enumeration order.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    modulus: FactoredInteger,
    components: Vec<Component>,
    /// Flattened generator orders across components.
    orders: Vec<u64>,
    /// lcm of the orders (exponent of the group).
    lambda: u64,
    phi: u64,
}

/// A character modulo `q`: one exponent per group generator, reduced modulo
/// that generator's order. The all-zero vector is the principal character.
#[derive(Debug, Clone)]
pub struct DirichletCharacter<'g> {
    group: &'g CharacterGroup,
    exponents: Vec<u64>,
}

impl PartialEq for DirichletCharacter<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus() == other.group.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter<'_> {}

/// Build the character group modulo `q`.
pub fn character_group(q: &FactoredInteger) -> Result<CharacterGroup> {
    CharacterGroup::new(q.clone())
}

impl CharacterGroup {
    pub fn new(modulus: FactoredInteger) -> Result<Self> {
        let q = modulus.value();
        let mut components = Vec::new();
        for &(p, a) in modulus.factors() {
            let pe = p.pow(a);
            if p == 2 {
                match a {
                    1 => continue, // phi(2) = 1 contributes nothing
                    2 => components.push(cyclic_component(pe, 3, 2, q)?),
                    _ => components.push(two_power_component(pe, a, q)?),
                }
            } else {
                let g = primitive_root(pe)?;
                let order = pe / p * (p - 1);
                components.push(cyclic_component(pe, g, order, q)?);
            }
        }
        let orders: Vec<u64> = components.iter().flat_map(|c| c.orders.clone()).collect();
        let lambda = orders.iter().fold(1u64, |acc, &n| acc / gcd(acc, n) * n);
        let phi = modulus.phi();
        debug_assert_eq!(orders.iter().product::<u64>(), phi);
        Ok(CharacterGroup {
            modulus,
            components,
            orders,
            lambda: lambda.max(1),
            phi,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus.value()
    }

    pub fn modulus_factored(&self) -> &FactoredInteger {
        &self.modulus
    }

    /// Number of characters (`phi(q)`).
    pub fn order(&self) -> u64 {
        self.phi
    }

    /// Generator orders per CRT axis, `2^a` recorded as the `(-1, 5)` pair.
    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    /// The principal character.
    pub fn principal(&self) -> DirichletCharacter<'_> {
        DirichletCharacter {
            group: self,
            exponents: vec![0; self.orders.len()],
        }
    }

    /// Character with the given exponent vector (reduced modulo the orders).
    pub fn character(&self, exponents: &[u64]) -> Result<DirichletCharacter<'_>> {
        if exponents.len() != self.orders.len() {
            return Err(Error::Domain("exponent vector length mismatch"));
        }
        let exponents = exponents
            .iter()
            .zip(&self.orders)
            .map(|(&e, &n)| e % n)
            .collect();
        Ok(DirichletCharacter {
            group: self,
            exponents,
        })
    }

    /// All characters in lexicographic exponent order.
    pub fn characters(&self) -> impl Iterator<Item = DirichletCharacter<'_>> {
        let radices = self.orders.clone();
        let total = self.phi;
        let mut counter = vec![0u64; radices.len()];
        let mut emitted = 0u64;
        core::iter::from_fn(move || {
            if emitted >= total {
                return None;
            }
            let out = DirichletCharacter {
                group: self,
                exponents: counter.clone(),
            };
            // Increment the mixed-radix counter, last axis fastest.
            for i in (0..radices.len()).rev() {
                counter[i] += 1;
                if counter[i] < radices[i] {
                    break;
                }
                counter[i] = 0;
            }
            emitted += 1;
            Some(out)
        })
    }

}

fn cyclic_component(pe: u64, g: u64, order: u64, q: u64) -> Result<Component> {
    let mut dlog = vec![NON_UNIT; pe as usize];
    let mut x = 1u64;
    for i in 0..order {
        dlog[x as usize] = i as u32;
        x = mul_mod(x, g, pe);
    }
    Ok(Component {
        prime_power: pe,
        orders: vec![order],
        global_gens: vec![crt_lift(g, pe, q)?],
        dlog,
    })
}

fn two_power_component(pe: u64, a: u32, q: u64) -> Result<Component> {
    // Units mod 2^a (a >= 3) are <-1> x <5>.
    let half_order = pe >> 2; // 2^{a-2}
    debug_assert_eq!(half_order, 1 << (a - 2));
    let mut dlog = vec![NON_UNIT; 2 * pe as usize];
    let minus_one = pe - 1;
    let mut base = 1u64;
    for beta in 0..half_order {
        let plus = base;
        let minus = mul_mod(minus_one, base, pe);
        dlog[plus as usize] = 0;
        dlog[(pe + plus) as usize] = beta as u32;
        dlog[minus as usize] = 1;
        dlog[(pe + minus) as usize] = beta as u32;
        base = mul_mod(base, 5, pe);
    }
    Ok(Component {
        prime_power: pe,
        orders: vec![2, half_order],
        global_gens: vec![crt_lift(minus_one, pe, q)?, crt_lift(5 % pe, pe, q)?],
        dlog,
    })
}

/// CRT lift of `g (mod pe)` to the residue that is `1` modulo `q / pe`.
fn crt_lift(g: u64, pe: u64, q: u64) -> Result<u64> {
    let m = q / pe;
    if m == 1 {
        return Ok(g % q);
    }
    let inv_m = mod_inverse((m % pe) as i64, pe)? % pe;
    let inv_pe = mod_inverse((pe % m) as i64, m)? % m;
    let t1 = (g as u128 * m as u128 % q as u128) * inv_m as u128 % q as u128;
    let t2 = (pe as u128) * inv_pe as u128 % q as u128;
    Ok(((t1 + t2) % q as u128) as u64)
}

impl<'g> DirichletCharacter<'g> {
    pub fn group(&self) -> &'g CharacterGroup {
        self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &n)| n / gcd(e, n))
            .fold(1u64, |acc, k| acc / gcd(acc, k) * k)
    }

    /// The conjugate character (negated exponent vector).
    pub fn conjugate(&self) -> DirichletCharacter<'g> {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &n)| if e == 0 { 0 } else { n - e })
            .collect();
        DirichletCharacter {
            group: self.group,
            exponents,
        }
    }

    /// Pointwise product with a character of the same group.
    pub fn mul(&self, other: &DirichletCharacter<'g>) -> DirichletCharacter<'g> {
        debug_assert!(core::ptr::eq(self.group, other.group));
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(&self.group.orders)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        DirichletCharacter {
            group: self.group,
            exponents,
        }
    }

    /// `chi(a)` as the exact reduced rational `t` with value `e(2 pi i t)`,
    /// or `None` when `gcd(a, q) > 1`.
    pub fn value_fraction(&self, a: i64) -> Option<(u64, u64)> {
        let q = self.group.modulus.value();
        let a = a.rem_euclid(q.max(1) as i64) as u64;
        if q == 1 {
            return Some((0, 1));
        }
        if gcd(a, q) != 1 {
            return None;
        }
        let lambda = self.group.lambda;
        let mut num: u128 = 0;
        let mut idx = 0;
        for comp in &self.group.components {
            let local = (a % comp.prime_power) as usize;
            for (gi, &order) in comp.orders.iter().enumerate() {
                let l = comp.dlog[gi * comp.prime_power as usize + local];
                debug_assert_ne!(l, NON_UNIT);
                let e = self.exponents[idx];
                num += e as u128 * l as u128 % lambda as u128 * (lambda / order) as u128;
                idx += 1;
            }
        }
        let num = (num % lambda as u128) as u64;
        let g = gcd(num, lambda);
        Some((num / g, lambda / g))
    }

    /// Evaluate the character: a root of unity on units, exactly 0 otherwise.
    pub fn evaluate(&self, a: i64) -> Complex64 {
        match self.value_fraction(a) {
            None => Complex64::new(0.0, 0.0),
            Some((num, den)) => {
                let t = 2.0 * core::f64::consts::PI * (num as f64) / (den as f64);
                let (s, c) = t.sin_cos();
                Complex64::new(c, s)
            }
        }
    }

    /// Induce this character modulo `d` to the group modulo `q`, a multiple
    /// of `d`: the result agrees with `self` on residues coprime to `q`.
    pub fn induce<'t>(&self, target: &'t CharacterGroup) -> Result<DirichletCharacter<'t>> {
        let d = self.group.modulus.value();
        let q = target.modulus.value();
        if q % d != 0 {
            return Err(Error::Domain("induce requires d | q"));
        }
        let mut exponents = Vec::with_capacity(target.orders.len());
        let mut idx = 0;
        for comp in &target.components {
            for (gi, &order) in comp.orders.iter().enumerate() {
                let g = comp.global_gens[gi];
                let (num, den) = self
                    .value_fraction(g as i64)
                    .expect("generators are coprime to q, hence to d");
                // chi(g) is a den-th root of unity with den | order.
                debug_assert_eq!(order % den, 0);
                exponents.push(num % den * (order / den) % order.max(1));
                idx += 1;
            }
        }
        let _ = idx;
        Ok(DirichletCharacter {
            group: target,
            exponents,
        })
    }
}

/// Conjugate of a character (free function mirroring the operation list).
pub fn conjugate<'g>(chi: &DirichletCharacter<'g>) -> DirichletCharacter<'g> {
    chi.conjugate()
}

/// Whether a character is the principal character of its group.
pub fn is_principal(chi: &DirichletCharacter<'_>) -> bool {
    chi.is_principal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor;
    use alloc::collections::BTreeSet;

    fn group(q: u64) -> CharacterGroup {
        CharacterGroup::new(factor(q).unwrap()).unwrap()
    }

    /// Exact value table over all residues, as reduced fractions.
    fn value_table(chi: &DirichletCharacter<'_>) -> Vec<Option<(u64, u64)>> {
        let q = chi.group().modulus();
        (0..q).map(|a| chi.value_fraction(a as i64)).collect()
    }

    #[test]
    fn group_sizes_and_structure() {
        assert_eq!(group(1).order(), 1);
        assert_eq!(group(1).characters().count(), 1);
        let g7 = group(7);
        assert_eq!(g7.order(), 6);
        assert_eq!(g7.generator_orders(), &[6]);
        let g8 = group(8);
        assert_eq!(g8.order(), 4);
        assert_eq!(g8.generator_orders(), &[2, 2]);
        let g360 = group(360); // 2^3 * 3^2 * 5
        assert_eq!(g360.order(), 96);
        assert_eq!(g360.characters().count(), 96);
    }

    #[test]
    fn value_tables_are_pairwise_distinct() {
        for q in 1..=100u64 {
            let g = group(q);
            let tables: BTreeSet<_> = g.characters().map(|chi| value_table(&chi)).collect();
            assert_eq!(tables.len() as u64, g.order(), "q = {q}");
        }
    }

    #[test]
    fn evaluate_examples() {
        let g7 = group(7);
        let chi0 = g7.principal();
        assert!((chi0.evaluate(3) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for chi in g7.characters() {
            assert_eq!(chi.evaluate(7), Complex64::new(0.0, 0.0));
            let norm = chi.evaluate(3).norm();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        // The order-2 character mod 5 is the Legendre symbol; 2 is a
        // non-residue mod 5.
        let g5 = group(5);
        let quad = g5
            .characters()
            .find(|c| c.order() == 2)
            .expect("quadratic character mod 5");
        assert!((quad.evaluate(2) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let squares: BTreeSet<u64> = (1..5u64).map(|a| a * a % 5).collect();
        for a in 1..5u64 {
            let want = if squares.contains(&a) { 1.0 } else { -1.0 };
            assert!((quad.evaluate(a as i64).re - want).abs() < 1e-12);
        }
    }

    #[test]
    fn induce_examples() {
        // chi_0 mod 1 induces chi_0 mod q.
        let g1 = group(1);
        let g12 = group(12);
        let ind = g1.principal().induce(&g12).unwrap();
        assert!(ind.is_principal());

        // Quadratic character mod 3 induced to modulus 6, checked pointwise
        // on the units {1, 5}.
        let g3 = group(3);
        let chi3 = g3.characters().find(|c| c.order() == 2).unwrap();
        let g6 = group(6);
        let chi6 = chi3.induce(&g6).unwrap();
        for a in [1i64, 5] {
            assert!((chi6.evaluate(a) - chi3.evaluate(a)).norm() < 1e-12);
        }
        assert_eq!(chi6.evaluate(2), Complex64::new(0.0, 0.0));
        assert_eq!(chi6.evaluate(3), Complex64::new(0.0, 0.0));

        // Induction to 15 evaluates through reduction mod 5.
        let g5 = group(5);
        let g15 = group(15);
        for chi in g5.characters() {
            let ind = chi.induce(&g15).unwrap();
            assert!((ind.evaluate(7) - chi.evaluate(2)).norm() < 1e-12);
            for a in 0..15i64 {
                if gcd(a as u64, 15) == 1 {
                    assert!((ind.evaluate(a) - chi.evaluate(a)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn induced_character_is_chi_times_principal() {
        // evaluate(induce(chi, q), a) = evaluate(chi, a) whenever (a, q) = 1.
        for (d, q) in [(3u64, 12u64), (4, 8), (5, 30), (7, 49), (8, 40)] {
            let gd = group(d);
            let gq = group(q);
            for chi in gd.characters() {
                let ind = chi.induce(&gq).unwrap();
                for a in 0..q {
                    let lifted = ind.evaluate(a as i64);
                    if gcd(a, q) == 1 {
                        assert!((lifted - chi.evaluate(a as i64)).norm() < 1e-12);
                    } else {
                        assert_eq!(lifted, Complex64::new(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_and_principality() {
        let g7 = group(7);
        assert!(conjugate(&g7.principal()).is_principal());
        let cubic = g7.characters().find(|c| c.order() == 3).unwrap();
        let conj = cubic.conjugate();
        assert_eq!(conj.order(), 3);
        assert!(cubic.mul(&conj).is_principal());
        for a in 1..7i64 {
            let v = cubic.evaluate(a);
            let w = conj.evaluate(a);
            assert!((w - v.conj()).norm() < 1e-12);
        }
        let principal_count = g7.characters().filter(is_principal).count();
        assert_eq!(principal_count, 1);
    }

    #[test]
    fn row_orthogonality() {
        for q in 1..=200u64 {
            let g = group(q);
            let phi = g.order() as f64;
            for chi in g.characters() {
                let sum: Complex64 = (0..q as i64).map(|a| chi.evaluate(a)).sum();
                if chi.is_principal() {
                    assert!((sum.re - phi).abs() < 1e-9 * phi && sum.im.abs() < 1e-9 * phi);
                } else {
                    assert!(sum.norm() < 1e-9 * phi, "q={q} sum={sum}");
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for q in 2..=200u64 {
            let g = group(q);
            let phi = g.order() as f64;
            for a in 2..q {
                if gcd(a, q) != 1 {
                    continue;
                }
                let sum: Complex64 = g.characters().map(|chi| chi.evaluate(a as i64)).sum();
                assert!(sum.norm() < 1e-9 * phi, "q={q} a={a} sum={sum}");
            }
        }
    }

    #[test]
    fn complete_multiplicativity_on_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..400 {
            let q = rng.gen_range(1..=200u64);
            let g = group(q);
            let chars: Vec<_> = g.characters().collect();
            let chi = &chars[rng.gen_range(0..chars.len())];
            let a = rng.gen_range(0..q.max(2)) as i64;
            let b = rng.gen_range(0..q.max(2)) as i64;
            let lhs = chi.evaluate(a * b);
            let rhs = chi.evaluate(a) * chi.evaluate(b);
            assert!((lhs - rhs).norm() < 1e-12, "q={q} a={a} b={b}");
        }
    }
}
