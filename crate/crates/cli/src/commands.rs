//! One function per subcommand; each resolves its parameters through the
//! config context and returns a [`Table`].

use lowzeros_core::arith::{factor, gcd, primes_up_to};
use lowzeros_core::characters::CharacterGroup;
use lowzeros_core::density::{
    corollary_constants, ks_main_term, nonvanishing_bound, pole_euler_product, pole_term,
    ConductorSpec, Rational, TestFunction,
};
use lowzeros_core::expsums::{
    char_product_identity, gauss_induction, gauss_sum, k_sum, k_sum_closed, k_sum_intermediate,
    kloosterman, kloosterman_char_decomp, kloosterman_split, psi, ramanujan, sum_tolerance,
    PsiMode, RamanujanMode,
};
use lowzeros_core::ingest::{one_level_density, parse_eigenvalues, parse_zeros, s_fg};
use lowzeros_core::petersson::{delta_kn, PeterssonQuery};
use lowzeros_core::qstar::{a_agreement, q_star_brute, q_star_main, QStarParams};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cli::*;
use crate::config::{CliError, Ctx};
use crate::output::{fnum, Table};

fn fejer(sigma: f64) -> Result<TestFunction, CliError> {
    Ok(TestFunction::fejer(sigma)?)
}

pub fn sum_kloosterman(ctx: &Ctx, args: &SumKloostermanArgs) -> Result<Table, CliError> {
    let m = ctx.get(args.m, "m", None)?;
    let n = ctx.get(args.n, "n", None)?;
    let q = ctx.get(args.q, "q", None)?;
    let fq = factor(q)?;
    let value = kloosterman(m, n, &fq);
    let mut t = Table::new(vec!["m", "n", "q", "value", "imag_residual"]);
    t.push(vec![
        m.to_string(),
        n.to_string(),
        q.to_string(),
        fnum(value.real()),
        fnum(value.value.im.abs()),
    ]);
    Ok(t)
}

pub fn sum_gauss(ctx: &Ctx, args: &SumGaussArgs) -> Result<Table, CliError> {
    let q = ctx.get(args.q, "q", None)?;
    let chi_idx = ctx.get(args.chi, "chi", Some(0))?;
    let n = ctx.get(args.n, "n", None)?;
    let group = CharacterGroup::new(factor(q)?)?;
    let chi = group
        .characters()
        .nth(chi_idx as usize)
        .ok_or_else(|| CliError::Config(format!("chi index {chi_idx} >= phi(q) = {}", group.order())))?;
    let g = gauss_sum(&chi, n);
    let mut t = Table::new(vec!["q", "chi", "n", "re", "im", "abs"]);
    t.push(vec![
        q.to_string(),
        chi_idx.to_string(),
        n.to_string(),
        fnum(g.value.re),
        fnum(g.value.im),
        fnum(g.value.norm()),
    ]);
    Ok(t)
}

pub fn sum_ramanujan(ctx: &Ctx, args: &SumRamanujanArgs) -> Result<Table, CliError> {
    let n = ctx.get(args.n, "n", None)?;
    let q = ctx.get(args.q, "q", None)?;
    let mode_name = ctx.get(args.mode.clone(), "mode", Some("von-sterneck".to_string()))?;
    let mode = match mode_name.as_str() {
        "brute" => RamanujanMode::Brute,
        "divisor" => RamanujanMode::Divisor,
        "von-sterneck" => RamanujanMode::VonSterneck,
        other => return Err(CliError::Config(format!("unknown mode {other:?}"))),
    };
    let value = ramanujan(n, &factor(q)?, mode);
    let mut t = Table::new(vec!["n", "q", "mode", "value"]);
    t.push(vec![
        n.to_string(),
        q.to_string(),
        mode_name,
        value
            .claimed_integer
            .map(|k| k.to_string())
            .unwrap_or_else(|| fnum(value.value.re)),
    ]);
    Ok(t)
}

pub fn verify_vonsterneck(ctx: &Ctx, args: &VerifyVonSterneckArgs) -> Result<Table, CliError> {
    let n_max = ctx.get(args.n_max, "n-max", Some(50))?;
    let q_max = ctx.get(args.q_max, "q-max", Some(300))?;
    let mut t = Table::new(vec!["n", "q", "brute", "divisor", "von_sterneck", "match"]);
    for q in 1..=q_max {
        let fq = factor(q)?;
        for n in 0..=n_max as i64 {
            let b = ramanujan(n, &fq, RamanujanMode::Brute).claimed_integer;
            let d = ramanujan(n, &fq, RamanujanMode::Divisor).claimed_integer;
            let v = ramanujan(n, &fq, RamanujanMode::VonSterneck).claimed_integer;
            let ok = b.is_some() && b == d && d == v;
            t.push_checked(
                vec![
                    n.to_string(),
                    q.to_string(),
                    b.map_or("nan".into(), |x| x.to_string()),
                    d.map_or("nan".into(), |x| x.to_string()),
                    v.map_or("nan".into(), |x| x.to_string()),
                    (ok as u8).to_string(),
                ],
                ok,
            );
        }
    }
    Ok(t)
}

pub fn verify_lemma62(ctx: &Ctx, args: &VerifyLemma62Args) -> Result<Table, CliError> {
    let b_max = ctx.get(args.b_max, "b-max", Some(60))?;
    let p_max = ctx.get(args.p_max, "p-max", Some(30))?;
    let n_max = ctx.get(args.n_max, "n-max", Some(4))?;
    let m_max = ctx.get(args.m_max, "m-max", Some(4))?;
    let primes: Vec<u64> = primes_up_to(p_max)?.primes().to_vec();
    let mut t = Table::new(vec!["b", "n", "m", "p", "decomp", "direct", "match"]);
    for b in 1..=b_max {
        let fb = factor(b)?;
        for n in 1..=n_max as i64 {
            if gcd(n as u64, b) != 1 {
                continue;
            }
            for m in 1..=m_max as i64 {
                for &p in &primes {
                    if gcd(p, b) != 1 {
                        continue;
                    }
                    let decomp = kloosterman_char_decomp(n, m, p, &fb)?;
                    let direct = kloosterman(n * m, n * p as i64, &fb).real();
                    let tol = sum_tolerance(fb.phi() * 2 * b + b);
                    let ok = (decomp.value.re - direct).abs() < tol
                        && decomp.value.im.abs() < tol;
                    t.push_checked(
                        vec![
                            b.to_string(),
                            n.to_string(),
                            m.to_string(),
                            p.to_string(),
                            fnum(decomp.value.re),
                            fnum(direct),
                            (ok as u8).to_string(),
                        ],
                        ok,
                    );
                }
            }
        }
    }
    Ok(t)
}

pub fn verify_lemma63(ctx: &Ctx, args: &VerifyLemma63Args) -> Result<Table, CliError> {
    let max_level = ctx.get(args.max_level, "max-level", Some(101))?;
    let inter_max = ctx.get(args.intermediate_max_level, "intermediate-max-level", Some(50))?;
    let pairs = [(1i64, 1i64), (1, 2), (1, 3), (2, 2), (3, 7)];
    let mut t = Table::new(vec![
        "phase", "level", "chi", "n1", "n2", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "match",
    ]);
    for &level in primes_up_to(max_level)?.primes() {
        let group = CharacterGroup::new(factor(level)?)?;
        let chi0 = group.principal();
        for &(n1, n2) in &pairs {
            if n1 % level as i64 == 0 || n2 % level as i64 == 0 {
                continue;
            }
            let brute = k_sum(n1, n2, &chi0)?;
            let closed = k_sum_closed(n1, n2, level)?;
            let ok = brute.claimed_integer == Some(closed);
            t.push_checked(
                vec![
                    "0".into(),
                    level.to_string(),
                    "0".into(),
                    n1.to_string(),
                    n2.to_string(),
                    fnum(brute.value.re),
                    fnum(brute.value.im),
                    closed.to_string(),
                    "0".into(),
                    (ok as u8).to_string(),
                ],
                ok,
            );
        }
        if level <= inter_max {
            for (ci, chi) in group.characters().enumerate() {
                for &(n1, n2) in &pairs {
                    if n1 % level as i64 == 0 || n2 % level as i64 == 0 {
                        continue;
                    }
                    let brute = k_sum(n1, n2, &chi)?;
                    let inter = k_sum_intermediate(n1, n2, &chi)?;
                    let tol = sum_tolerance(level * level * level);
                    let ok = (brute.value - inter.value).norm() < tol;
                    t.push_checked(
                        vec![
                            "1".into(),
                            level.to_string(),
                            ci.to_string(),
                            n1.to_string(),
                            n2.to_string(),
                            fnum(brute.value.re),
                            fnum(brute.value.im),
                            fnum(inter.value.re),
                            fnum(inter.value.im),
                            (ok as u8).to_string(),
                        ],
                        ok,
                    );
                }
            }
        }
    }
    Ok(t)
}

pub fn verify_lemma64(ctx: &Ctx, args: &VerifyLemma64Args) -> Result<Table, CliError> {
    let r_max = ctx.get(args.r_max, "r-max", Some(20))?;
    let b_max = ctx.get(args.b_max, "b-max", Some(60))?;
    let m_max = ctx.get(args.m_max, "m-max", Some(10))?;
    let mut t = Table::new(vec![
        "r", "b1", "chi", "m1", "reduced_re", "reduced_im", "direct_re", "direct_im", "match",
    ]);
    for r in 1..=r_max {
        let group = CharacterGroup::new(factor(r)?)?;
        for b1 in (r..=b_max).step_by(r as usize) {
            let target = CharacterGroup::new(factor(b1)?)?;
            for (ci, chi) in group.characters().enumerate() {
                for m1 in 1..=m_max as i64 {
                    let reduced = gauss_induction(&chi, b1, m1)?.value;
                    let direct = gauss_sum(&chi.induce(&target)?, m1 * m1).value;
                    let tol = sum_tolerance(2 * b1 + 2 * r);
                    let ok = (reduced - direct).norm() < tol;
                    t.push_checked(
                        vec![
                            r.to_string(),
                            b1.to_string(),
                            ci.to_string(),
                            m1.to_string(),
                            fnum(reduced.re),
                            fnum(reduced.im),
                            fnum(direct.re),
                            fnum(direct.im),
                            (ok as u8).to_string(),
                        ],
                        ok,
                    );
                }
            }
        }
    }
    Ok(t)
}

pub fn verify_lemma65(ctx: &Ctx, args: &VerifyLemma65Args) -> Result<Table, CliError> {
    let n_range = ctx.get_parsed(
        args.n.clone(),
        "n",
        Some(crate::config::IntRange { start: 1, end: 10, step: 1 }),
    )?;
    let r_range = ctx.get_parsed(
        args.r.clone(),
        "r",
        Some(crate::config::IntRange { start: 1, end: 100, step: 1 }),
    )?;
    let mut t = Table::new(vec!["n1", "n2", "r", "brute", "closed", "match"]);
    for r in r_range.values() {
        let fr = factor(r)?;
        for n1 in n_range.values() {
            for n2 in n_range.values() {
                let b = psi(n1 as i64, n2 as i64, &fr, PsiMode::Brute);
                let c = psi(n1 as i64, n2 as i64, &fr, PsiMode::Closed);
                let ok = b == c;
                t.push_checked(
                    vec![
                        n1.to_string(),
                        n2.to_string(),
                        r.to_string(),
                        b.to_string(),
                        c.to_string(),
                        (ok as u8).to_string(),
                    ],
                    ok,
                );
            }
        }
    }
    Ok(t)
}

pub fn verify_split(ctx: &Ctx, args: &VerifySplitArgs, seed: u64) -> Result<Table, CliError> {
    let count = ctx.get(args.count, "count", Some(500))?;
    let b_max = ctx.get(args.b_max, "b-max", Some(30))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels = [5u64, 7, 11, 13];
    let mut t = Table::new(vec!["idx", "m1", "p", "b", "level", "product", "direct", "match"]);
    let mut done = 0u64;
    while done < count {
        let b = rng.gen_range(1..=b_max);
        let level = levels[rng.gen_range(0..levels.len())];
        if gcd(b, level) != 1 {
            continue;
        }
        let m1 = rng.gen_range(1..=20i64);
        let p = rng.gen_range(1..=20i64);
        let split = kloosterman_split(m1 * m1, p, b, level)?;
        let direct = kloosterman(m1 * m1, p, &factor(b * level)?).real();
        let ok = (split.product().re - direct).abs() < sum_tolerance(2 * b * level);
        t.push_checked(
            vec![
                done.to_string(),
                m1.to_string(),
                p.to_string(),
                b.to_string(),
                level.to_string(),
                fnum(split.product().re),
                fnum(direct),
                (ok as u8).to_string(),
            ],
            ok,
        );
        done += 1;
    }
    Ok(t)
}

pub fn verify_charprod(ctx: &Ctx, args: &VerifyCharprodArgs) -> Result<Table, CliError> {
    let r_max = ctx.get(args.r_max, "r-max", Some(20))?;
    let m_max = ctx.get(args.m_max, "m-max", Some(10))?;
    let mut t = Table::new(vec!["r", "d1", "d2", "m1", "m2", "char_re", "psi_side", "match"]);
    for r in 1..=r_max {
        let fr = factor(r)?;
        for (d1, d2) in [(1u64, 1u64), (2, 3), (3, 2), (2, 7), (5, 3), (7, 2)] {
            if gcd(d1, d2) != 1 || gcd(r, d1 * d2) != 1 {
                continue;
            }
            for m1 in 1..=m_max as i64 {
                for m2 in [1i64, 2, 5, 10] {
                    let c = char_product_identity(m1, m2, d1, d2, &fr)?;
                    let ok = (c.char_side
                        - lowzeros_core::Complex64::new(c.psi_side, 0.0))
                    .norm()
                        < sum_tolerance(c.terms);
                    t.push_checked(
                        vec![
                            r.to_string(),
                            d1.to_string(),
                            d2.to_string(),
                            m1.to_string(),
                            m2.to_string(),
                            fnum(c.char_side.re),
                            fnum(c.psi_side),
                            (ok as u8).to_string(),
                        ],
                        ok,
                    );
                }
            }
        }
    }
    Ok(t)
}

pub fn petersson_delta(ctx: &Ctx, args: &PeterssonDeltaArgs) -> Result<Table, CliError> {
    let k = ctx.get(args.k, "k", None)?;
    let level = ctx.get(args.level, "level", Some(1))?;
    let m = ctx.get(args.m, "m", Some(1))?;
    let n = ctx.get(args.n, "n", Some(1))?;
    let b_max = ctx.get(args.b_max, "b-max", Some(10_000))?;
    let r = delta_kn(&PeterssonQuery {
        k,
        level,
        m,
        n,
        b_max,
    })?;
    let mut t = Table::new(vec![
        "k",
        "level",
        "m",
        "n",
        "value",
        "tail_bound",
        "certified",
        "accelerated",
        "accel_error",
    ]);
    t.push(vec![
        k.to_string(),
        level.to_string(),
        m.to_string(),
        n.to_string(),
        fnum(r.value),
        fnum(r.tail_bound),
        (r.certified as u8).to_string(),
        r.accelerated.map_or("nan".into(), |a| fnum(a.value)),
        r.accelerated.map_or("nan".into(), |a| fnum(a.empirical_error)),
    ]);
    Ok(t)
}

pub fn density_table(_ctx: &Ctx) -> Result<Table, CliError> {
    let mut t = Table::new(vec![
        "regime",
        "c0_num",
        "c0_den",
        "c0",
        "sigma_num",
        "sigma_den",
        "consistent",
    ]);
    for (i, row) in corollary_constants().into_iter().enumerate() {
        let recomputed = nonvanishing_bound(row.sigma)?;
        let ok = recomputed == row.c0;
        t.push_checked(
            vec![
                i.to_string(),
                row.c0.numer().to_string(),
                row.c0.denom().to_string(),
                fnum(*row.c0.numer() as f64 / *row.c0.denom() as f64),
                row.sigma.numer().to_string(),
                row.sigma.denom().to_string(),
                (ok as u8).to_string(),
            ],
            ok,
        );
    }
    Ok(t)
}

pub fn density_main_term(ctx: &Ctx, args: &DensityMainTermArgs) -> Result<Table, CliError> {
    let sigmas = ctx.get_parsed(
        args.sigma.clone(),
        "sigma",
        Some(crate::config::FloatRange {
            start: 0.25,
            end: 1.25,
            step: 0.25,
        }),
    )?;
    let mut t = Table::new(vec!["sigma", "density_integral", "s_limit", "nonvanishing_bound"]);
    for sigma in sigmas.values() {
        let phi = fejer(sigma)?;
        let main = ks_main_term(&phi);
        // Rational bound when sigma is a small-denominator rational.
        let approx = (sigma * 10_000.0).round() as i64;
        let bound = nonvanishing_bound(Rational::new(approx, 10_000))?;
        t.push(vec![
            fnum(sigma),
            fnum(main.density_integral),
            fnum(main.s_limit),
            fnum(*bound.numer() as f64 / *bound.denom() as f64),
        ]);
    }
    Ok(t)
}

pub fn density_pole(ctx: &Ctx, args: &DensityPoleArgs) -> Result<Table, CliError> {
    let k = ctx.get(args.k, "k", None)?;
    let sigma = ctx.get(args.sigma, "sigma", Some(1.0))?;
    let levels = ctx.get_parsed(
        args.levels.clone(),
        "levels",
        Some(crate::config::IntList(vec![101, 1009, 10007])),
    )?;
    let phi = fejer(sigma)?;
    let mut t = Table::new(vec!["k", "level", "sigma", "conductor", "pole_term"]);
    for &level in &levels.0 {
        let spec = ConductorSpec::new(k, k, level, level)?;
        let val = pole_term(&spec, &phi)?;
        t.push(vec![
            k.to_string(),
            level.to_string(),
            fnum(sigma),
            spec.r.to_string(),
            fnum(val),
        ]);
    }
    Ok(t)
}

pub fn density_pole_product(ctx: &Ctx, args: &DensityPoleProductArgs) -> Result<Table, CliError> {
    let p_cap = ctx.get(args.p_cap, "p-cap", Some(100_000))?;
    let d_cap = ctx.get(args.d_cap, "d-cap", Some(1000))?;
    let pp = pole_euler_product(p_cap, d_cap)?;
    let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let ok = (pp.product_completed - target).abs() <= 1e-7
        && (pp.triple_sum - target).abs() <= pp.triple_tail_budget;
    let mut t = Table::new(vec![
        "p_cap",
        "d_cap",
        "product_truncated",
        "product_completed",
        "triple_sum",
        "triple_tail_budget",
        "target",
        "match",
    ]);
    t.push_checked(
        vec![
            p_cap.to_string(),
            d_cap.to_string(),
            fnum(pp.product_truncated),
            fnum(pp.product_completed),
            fnum(pp.triple_sum),
            fnum(pp.triple_tail_budget),
            fnum(target),
            (ok as u8).to_string(),
        ],
        ok,
    );
    Ok(t)
}

fn qstar_params(ctx: &Ctx, args: &QstarArgs, level: u64) -> Result<QStarParams, CliError> {
    let m1 = ctx.get(args.m1, "m1", Some(1))?;
    let m2 = ctx.get(args.m2, "m2", Some(1))?;
    let b1 = ctx.get(args.b1, "b1", Some(1))?;
    let b2 = ctx.get(args.b2, "b2", Some(1))?;
    let k1 = ctx.get(args.k1, "k1", Some(4))?;
    let k2 = ctx.get(args.k2, "k2", Some(6))?;
    let sigma = ctx.get(args.sigma, "sigma", Some(0.9))?;
    Ok(QStarParams::new(m1, m2, b1, b2, level, k1, k2, fejer(sigma)?)?)
}

pub fn qstar_single(ctx: &Ctx, args: &QstarArgs, main: bool) -> Result<Table, CliError> {
    let level = ctx.get(args.level, "level", None)?;
    let p = qstar_params(ctx, args, level)?;
    let mut t = Table::new(vec!["level", "k1", "k2", "sigma", "value"]);
    let value = if main {
        q_star_main(&p)?
    } else {
        let cap = ((p.conductor.r as f64).ln() * p.phi.sigma()).exp().ceil() as u64 + 10;
        let primes = primes_up_to(cap)?;
        q_star_brute(&p, &primes)?
    };
    t.push(vec![
        level.to_string(),
        p.k1.to_string(),
        p.k2.to_string(),
        fnum(p.phi.sigma()),
        fnum(value),
    ]);
    Ok(t)
}

pub fn qstar_sweep(ctx: &Ctx, args: &QstarArgs) -> Result<Table, CliError> {
    let levels = ctx.get_parsed(
        args.levels.clone(),
        "levels",
        Some(crate::config::IntList(vec![13, 101, 1009])),
    )?;
    let params: Vec<QStarParams> = levels
        .0
        .iter()
        .map(|&level| qstar_params(ctx, args, level))
        .collect::<Result<_, _>>()?;
    // Parallel over levels; collection preserves input order, so output is
    // deterministic regardless of thread count (RAYON_NUM_THREADS).
    let rows: Vec<Result<(f64, f64), CliError>> = params
        .par_iter()
        .map(|p| {
            let cap = ((p.conductor.r as f64).ln() * p.phi.sigma()).exp().ceil() as u64 + 10;
            let primes = primes_up_to(cap).map_err(CliError::from)?;
            let brute = q_star_brute(p, &primes).map_err(CliError::from)?;
            let main = q_star_main(p).map_err(CliError::from)?;
            Ok((brute, main))
        })
        .collect();
    let mut t = Table::new(vec![
        "level",
        "k1",
        "k2",
        "sigma",
        "brute",
        "main",
        "residual",
        "scaled_residual",
    ]);
    let sigma = params[0].phi.sigma();
    let mut prev_scaled = f64::INFINITY;
    for (p, row) in params.iter().zip(rows) {
        let (brute, main) = row?;
        let resid = (brute - main).abs();
        let scaled = resid / (p.level as f64).powf(2.0 * sigma - 0.5);
        let ok = scaled <= prev_scaled;
        prev_scaled = scaled;
        t.push_checked(
            vec![
                p.level.to_string(),
                p.k1.to_string(),
                p.k2.to_string(),
                fnum(sigma),
                fnum(brute),
                fnum(main),
                fnum(resid),
                fnum(scaled),
            ],
            ok,
        );
    }
    Ok(t)
}

pub fn asum_sweep(ctx: &Ctx, args: &AsumArgs) -> Result<Table, CliError> {
    let level = ctx.get(args.level, "level", Some(5))?;
    let x = ctx.get_parsed(
        args.x.clone(),
        "x",
        Some(crate::config::IntList(vec![1000, 10_000, 100_000, 1_000_000])),
    )?;
    let m1 = ctx.get(args.m1, "m1", Some(1))?;
    let m2 = ctx.get(args.m2, "m2", Some(1))?;
    let b1 = ctx.get(args.b1, "b1", Some(1))?;
    let b2 = ctx.get(args.b2, "b2", Some(1))?;
    let sigma = ctx.get(args.sigma, "sigma", Some(0.5))?;
    let p = QStarParams::new(m1, m2, b1, b2, level, 4, 6, fejer(sigma)?)?;
    let &x_max = x.0.iter().max().ok_or_else(|| CliError::Config("empty x list".into()))?;
    let primes = primes_up_to(x_max)?;
    let rep = a_agreement(&x.0, &p, &primes)?;
    let mut t = Table::new(vec![
        "x",
        "raw",
        "coprime_only",
        "main",
        "residual_over_x",
    ]);
    for row in &rep.rows {
        t.push(vec![
            row.x.to_string(),
            fnum(row.raw),
            fnum(row.coprime_only),
            fnum(row.main),
            fnum(row.scaled_residual),
        ]);
    }
    t.trailer("fitted_exponent", fnum(rep.fitted_exponent));
    t.trailer("sign_changes", rep.sign_changes.to_string());
    Ok(t)
}

fn load_eigenvalue_pair(
    paths: &[std::path::PathBuf],
) -> Result<(lowzeros_core::ingest::HeckeData, lowzeros_core::ingest::HeckeData), CliError> {
    if paths.is_empty() || paths.len() > 2 {
        return Err(CliError::Config(
            "pass --eigenvalues once (self-pairing) or twice".into(),
        ));
    }
    let read = |p: &std::path::Path| -> Result<_, CliError> {
        let text =
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        Ok(parse_eigenvalues(&text)?)
    };
    let f = read(&paths[0])?;
    let g = if paths.len() == 2 {
        read(&paths[1])?
    } else {
        f.clone()
    };
    Ok((f, g))
}

pub fn explicit_s(ctx: &Ctx, args: &ExplicitSArgs) -> Result<Table, CliError> {
    let sigma = ctx.get(args.sigma, "sigma", Some(0.5))?;
    let conductor = ctx.get(args.conductor, "conductor", None)?;
    let (f, g) = load_eigenvalue_pair(&args.eigenvalues)?;
    let phi = fejer(sigma)?;
    let s = s_fg(&f, &g, &phi, conductor)?;
    let mut t = Table::new(vec!["label_f", "label_g", "sigma", "conductor", "s"]);
    t.push(vec![
        f.label.clone(),
        g.label.clone(),
        fnum(sigma),
        fnum(conductor),
        fnum(s),
    ]);
    Ok(t)
}

pub fn explicit_density(ctx: &Ctx, args: &ExplicitDensityArgs) -> Result<Table, CliError> {
    let sigma = ctx.get(args.sigma, "sigma", Some(0.5))?;
    let text = std::fs::read_to_string(&args.zeros)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.zeros.display())))?;
    let z = parse_zeros(&text)?;
    let phi = fejer(sigma)?;
    let d = one_level_density(&z, &phi);
    let mut t = Table::new(vec!["label", "sigma", "conductor", "zeros", "value", "tail_estimate"]);
    t.push(vec![
        z.label.clone(),
        fnum(sigma),
        fnum(z.conductor),
        z.ordinates().len().to_string(),
        fnum(d.value),
        fnum(d.tail_estimate),
    ]);
    Ok(t)
}

pub fn explicit_residual(ctx: &Ctx, args: &ExplicitResidualArgs) -> Result<Table, CliError> {
    let sigma = ctx.get(args.sigma, "sigma", Some(0.5))?;
    let k1 = ctx.get(args.k1, "k1", None)?;
    let k2 = ctx.get(args.k2, "k2", None)?;
    let n1 = ctx.get(args.n1, "n1", Some(1))?;
    let n2 = ctx.get(args.n2, "n2", Some(1))?;
    let pole = ctx.get(args.pole.clone(), "pole", Some("auto".to_string()))?;
    let (f, g) = load_eigenvalue_pair(&args.eigenvalues)?;
    let text = std::fs::read_to_string(&args.zeros)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.zeros.display())))?;
    let z = parse_zeros(&text)?;
    let spec = ConductorSpec::new(k1, k2, n1, n2)?;
    let include_pole = match pole.as_str() {
        "on" => true,
        "off" => false,
        "auto" => spec.has_pole() && f.label == g.label,
        other => return Err(CliError::Config(format!("bad pole flag {other:?}"))),
    };
    let phi = fejer(sigma)?;
    let resid = lowzeros_core::ingest::explicit_formula_residual(&f, &g, &z, &phi, &spec, include_pole)?;
    let mut t = Table::new(vec![
        "label_f",
        "label_g",
        "sigma",
        "conductor",
        "pole",
        "residual",
    ]);
    t.push(vec![
        f.label.clone(),
        g.label.clone(),
        fnum(sigma),
        spec.r.to_string(),
        (include_pole as u8).to_string(),
        fnum(resid),
    ]);
    Ok(t)
}
