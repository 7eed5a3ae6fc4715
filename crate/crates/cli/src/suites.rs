//! Reduced-size reproduction suites behind `fmonoid verify`.

use std::fmt::Write as _;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use fmonoid_core::census::{
    count_2simple_preimages, donnelly_exclusions, donnelly_size, donnelly_y, minimal_support_search,
    random_s24_pair, s24_census, s24_threshold, xm_census, xm_ratio, xm_set, xm_threshold,
    MinNConfig, DEFAULT_PRODUCT_BUDGET,
};
use fmonoid_core::constructions::{
    basic_equation, basic_solution, degree_one_solution, generic_coefficients, qk_product,
    qk_system_solution, solution_family, FamilyParams, QkReading,
};
use fmonoid_core::field::certify;
use fmonoid_core::monomial::{normalize, normalize_by_rewriting, RewriteStrategy};
use fmonoid_core::ore::{ore_reduce, solve_pair_limited, ReduceBudget};
use fmonoid_core::sets::{catalan_triangle, CatalanIter};
use fmonoid_core::{Error, Field, Monomial, Polynomial, Scalar, SetDescriptor};

use crate::input::{CliError, CliResult};
use crate::Output;

type Check = Result<String, String>;
type Suite = (&'static str, fn() -> Check);

const SUITES: &[Suite] = &[
    ("counting", counting),
    ("confluence", confluence),
    ("xm", xm),
    ("degree-one", degree_one),
    ("basic", basic),
    ("family", family),
    ("s24", s24),
    ("min-n", min_n),
    ("reduce", reduce),
    ("qk", qk),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

pub fn run(name: &str) -> CliResult<(Output, u8)> {
    let chosen: Vec<_> = SUITES
        .iter()
        .filter(|(n, _)| name == "all" || *n == name)
        .collect();
    if chosen.is_empty() {
        let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
        return Err(CliError::Input(format!(
            "unknown suite {name:?}; expected all or one of {}",
            names.join(", ")
        )));
    }
    let mut text = String::new();
    let mut results = Vec::new();
    let mut all = true;
    for (n, f) in chosen {
        let started = Instant::now();
        let res = f();
        eprintln!("{n}: {:.2?}", started.elapsed());
        let (status, detail) = match &res {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                all = false;
                ("FAIL", d.clone())
            }
        };
        let _ = writeln!(text, "{n}: {status} ({detail})");
        results.push(json!({ "suite": n, "status": status, "detail": detail }));
    }
    let out = Output::new(text, json!({ "command": "verify", "suites": results }))?;
    Ok((out, if all { 0 } else { 1 }))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let f = Field::Rational;
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-30i64..=30);
    }
    f.div(&f.from_i64(num), &f.from_i64(rng.gen_range(1..=9))).unwrap()
}

fn counting() -> Check {
    for n in 1..=11u32 {
        for k in 1..=n {
            let got = CatalanIter::new(k, n).count() as u64;
            let want = catalan_triangle(n, k).map_err(err)?.to_u64().unwrap_or(0);
            ensure(got == want, || format!("|S_{{{k},{n}}}| = {got}, formula {want}"))?;
        }
    }
    Ok("1 <= k <= n <= 11".into())
}

fn confluence() -> Check {
    let mut r = ChaCha8Rng::seed_from_u64(2);
    for t in 0..10_000u64 {
        let len = r.gen_range(0..=10);
        let w: Vec<u32> = (0..len).map(|_| r.gen_range(0..=6)).collect();
        let nf = normalize(&w);
        for s in [
            RewriteStrategy::RightmostFirst,
            RewriteStrategy::LeftmostFirst,
            RewriteStrategy::Random(t),
        ] {
            ensure(normalize_by_rewriting(&w, s) == nf, || format!("mismatch on {w:?}"))?;
        }
    }
    Ok("10000 words".into())
}

fn xm() -> Check {
    let two = BigRational::from_integer(2.into());
    for m in 1..=3 {
        let n = xm_threshold(m);
        let rec = xm_census(m, n, DEFAULT_PRODUCT_BUDGET).map_err(err)?;
        ensure(rec.ratio() == xm_ratio(m, n).map_err(err)? && rec.ratio() < two, || {
            format!("m={m}: ratio {}", rec.ratio())
        })?;
        let f = Field::random_prime(m as u64);
        let a = Polynomial::random_full(f, &xm_set(m), 1).map_err(err)?;
        let b = Polynomial::random_full(f, &xm_set(m), 2).map_err(err)?;
        let y = SetDescriptor::catalan(m + 2, n).map_err(err)?;
        let sols = solve_pair_limited(&a, &b, &y, Some(1)).map_err(err)?;
        ensure(sols.first().is_some_and(|s| s.verified && s.is_nonzero()), || {
            format!("m={m}: no verified solution")
        })?;
    }
    Ok("m = 1..3".into())
}

fn degree_one() -> Check {
    for m in 1..=4usize {
        let cert = certify(m as u64, 3, 4 * m as u64 + 4, |g| {
            let Ok((al, be)) = generic_coefficients(g, m) else {
                return false;
            };
            let Ok((u, v)) = degree_one_solution(g, &al, &be) else {
                return false;
            };
            let x0m = Monomial::power(0, m);
            &Polynomial::linear(g, &al) * &u == &Polynomial::linear(g, &be) * &v
                && u.degree() == Some(m)
                && !u.coefficient(&x0m).is_zero()
                && !v.coefficient(&x0m).is_zero()
        });
        ensure(cert.holds(), || format!("m={m}: {cert:?}"))?;
    }
    Ok("m = 1..4 under 3 generic seeds".into())
}

fn basic() -> Check {
    let f = Field::Rational;
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (al, be) = (random_rational(&mut r), random_rational(&mut r));
        let (a, b) = basic_equation(f, &al, &be);
        let (u, v) = basic_solution(f, &al, &be).map_err(err)?;
        ensure(&a * &u == &b * &v, || format!("alpha={al} beta={be}"))?;
    }
    Ok("20 rational pairs".into())
}

fn family() -> Check {
    let f = Field::Rational;
    let mut r = ChaCha8Rng::seed_from_u64(6);
    for d in 2..=4usize {
        for t in 0..20u64 {
            let (al, be) = (random_rational(&mut r), random_rational(&mut r));
            let params = FamilyParams::random(f, be.clone(), d, d as u32 + 2, t).map_err(err)?;
            let (u, v) = solution_family(f, &params, &al).map_err(err)?;
            let (a, b) = basic_equation(f, &al, &be);
            ensure(&a * &u == &b * &v, || format!("d={d} seed={t}"))?;
        }
    }
    Ok("20 members for each d = 2..4".into())
}

fn s24() -> Check {
    for n in 5..=10u32 {
        let y = donnelly_y(n).map_err(err)?.enumerate().map_err(err)?.len() as u64;
        ensure(Some(y) == donnelly_size(n).map_err(err)?.to_u64(), || format!("|Y| at n={n}"))?;
        let c = s24_census(n, DEFAULT_PRODUCT_BUDGET).map_err(err)?;
        ensure(c.record.bound_holds == Some(true), || format!("bound at n={n}"))?;
        let (e1, e2) = donnelly_exclusions(n).map_err(err)?;
        if n >= 6 {
            ensure(
                e1.iter().chain(&e2).all(|d| count_2simple_preimages(d, n) == 3),
                || format!("preimages at n={n}"),
            )?;
        }
    }
    let t = s24_threshold(5, 100).map_err(err)?;
    ensure(t == Some(45), || format!("threshold {t:?}"))?;
    Ok("n = 5..10, ratio below 2 from n = 45".into())
}

fn min_n() -> Check {
    let (a, b) = random_s24_pair(8).map_err(err)?;
    let rep = minimal_support_search(&a, &b, &MinNConfig::new(5, 9, vec![1, 2, 3])).map_err(err)?;
    ensure(rep.rows.iter().all(|r| r.dims.iter().all(|&d| d == 0)), || rep.to_table())?;
    Ok("dimension 0 for n = 5..9 under 3 primes".into())
}

fn reduce() -> Check {
    let f = Field::Rational;
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let (mut ok, mut budget) = (0, 0);
    for _ in 0..20 {
        let mut draw = || {
            let terms: Vec<(Monomial, Scalar)> = (0..r.gen_range(1..=4))
                .map(|_| {
                    let w: Vec<u32> = (0..r.gen_range(0..=2)).map(|_| r.gen_range(0..=2)).collect();
                    (normalize(&w), f.from_i64(r.gen_range(1..=5)))
                })
                .collect();
            Polynomial::from_terms(f, terms)
        };
        let (a, b) = (draw(), draw());
        if a.is_zero() || b.is_zero() {
            continue;
        }
        match ore_reduce(&a, &b, &ReduceBudget::default()) {
            Ok(rep) => {
                ensure(rep.verified && &a * &rep.unknowns[0] == &b * &rep.unknowns[1], || {
                    format!("{a} / {b}")
                })?;
                ok += 1;
            }
            Err(Error::BudgetExhausted(_)) => budget += 1,
            Err(e) => return Err(format!("{a} / {b}: {e}")),
        }
    }
    Ok(format!("{ok} solved, {budget} over budget"))
}

fn qk() -> Check {
    let f = Field::Rational;
    let mut r = ChaCha8Rng::seed_from_u64(10);
    for k in 1..=5 {
        let pairs: Vec<(Scalar, Scalar)> = (0..k)
            .map(|_| (random_rational(&mut r), random_rational(&mut r)))
            .collect();
        let us = qk_system_solution(f, &pairs, QkReading::Diagonal).map_err(err)?;
        let p = qk_product(f, &pairs, QkReading::Diagonal);
        for ((al, be), u) in pairs.iter().zip(&us) {
            let l = Polynomial::linear(f, &[al.clone(), be.clone()]);
            ensure(&l * u == p, || format!("k={k}"))?;
        }
    }
    Ok("k = 1..5".into())
}
