//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fmonoid_core::census::{
    count_2simple_preimages, donnelly_exclusions, donnelly_size, donnelly_y, minimal_support_search,
    random_s24_pair, s24_bound, s24_bound_ratio, s24_census, s24_cubic_ratio, s24_threshold,
    xm_census, xm_ratio, xm_set, xm_threshold, MinNConfig, DEFAULT_PRODUCT_BUDGET,
};
use fmonoid_core::constructions::{
    basic_equation, basic_solution, degree_one_solution, generic_coefficients,
    normalized_basic_solution, qk_equations, qk_product, qk_system_solution, solution_family,
    FamilyParams, QkReading,
};
use fmonoid_core::field::certify;
use fmonoid_core::monomial::{normalize, normalize_by_rewriting, RewriteStrategy};
use fmonoid_core::ore::{ore_reduce, solve_pair_limited, verify_solution, ReduceBudget};
use fmonoid_core::parse::parse_polynomial;
use fmonoid_core::sets::{all_monomials, catalan_triangle, in_catalan_set, CatalanIter};
use fmonoid_core::{Error, Field, Monomial, Polynomial, Scalar, SetDescriptor, SparseMatrix};

fn criterion(id: u32, name: &str, body: impl FnOnce() -> String) {
    let started = Instant::now();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(detail) => println!(
            "criterion {id:>2} {name}: PASS ({detail}; {:.2?})",
            started.elapsed()
        ),
        Err(e) => {
            println!("criterion {id:>2} {name}: FAIL");
            resume_unwind(e);
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let f = Field::Rational;
    loop {
        let num = rng.gen_range(-50i64..=50);
        let den = rng.gen_range(1i64..=20);
        if num != 0 {
            return f.div(&f.from_i64(num), &f.from_i64(den)).unwrap();
        }
    }
}

#[test]
fn c01_counting() {
    criterion(1, "catalan counts", || {
        let started = Instant::now();
        let mut checked = 0;
        for n in 1..=14u32 {
            for k in 1..=n {
                let count = CatalanIter::new(k, n).count() as u64;
                // k/(2n-k) * C(2n-k, n), evaluated independently of the library
                let c = binomial_u128(2 * n - k, n) * k as u128;
                assert_eq!(c % (2 * n - k) as u128, 0);
                let want = (c / (2 * n - k) as u128) as u64;
                assert_eq!(count, want, "k={k} n={n}");
                assert_eq!(catalan_triangle(n, k).unwrap().to_u64(), Some(want));
                checked += 1;
            }
        }
        // the enumerator itself against a membership filter over all words
        for n in 1..=8u32 {
            for k in 1..=n {
                let brute: Vec<Monomial> = all_monomials((n - k) as usize, n)
                    .into_iter()
                    .filter(|w| in_catalan_set(w, k, n))
                    .collect();
                let mut listed: Vec<Monomial> = CatalanIter::new(k, n).collect();
                listed.sort();
                assert_eq!(listed, brute, "k={k} n={n}");
            }
        }
        assert!(started.elapsed() < Duration::from_secs(60));
        format!("{checked} pairs (k, n)")
    });
}

fn binomial_u128(n: u32, k: u32) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

#[test]
fn c02_confluence() {
    criterion(2, "rewriting confluence", || {
        let started = Instant::now();
        let mut r = rng(2);
        let mut mismatches = 0;
        for t in 0..100_000u64 {
            let len = r.gen_range(0..=10);
            let word: Vec<u32> = (0..len).map(|_| r.gen_range(0..=6)).collect();
            let a = normalize_by_rewriting(&word, RewriteStrategy::RightmostFirst);
            let b = normalize_by_rewriting(&word, RewriteStrategy::LeftmostFirst);
            let c = normalize_by_rewriting(&word, RewriteStrategy::Random(t));
            if a != b || a != c || a != normalize(&word) {
                mismatches += 1;
            }
        }
        assert_eq!(mismatches, 0);
        assert!(started.elapsed() < Duration::from_secs(60));
        "100000 words, 0 mismatches".into()
    });
}

fn xm_count_and_ratio(m: u32) -> (u64, u64) {
    let n = xm_threshold(m);
    let rec = xm_census(m, n, u64::MAX).unwrap();
    let two = BigRational::from_integer(2.into());
    assert_eq!(rec.ratio(), xm_ratio(m, n).unwrap(), "m={m}");
    assert!(rec.ratio() < two && rec.is_below_doubling(), "m={m}");
    // one step earlier the ratio is not below 2
    assert!(xm_ratio(m, n - 1).unwrap() >= two);
    // X_m S_{m+2,n} = S_{m+1,n}
    assert_eq!(rec.sy, fmonoid_core::sets::catalan_triangle_u64(n, m + 1).unwrap());
    (rec.y, rec.sy)
}

fn xm_solution(m: u32, seed: u64) {
    let n = xm_threshold(m);
    let f = Field::random_prime(seed);
    let x = xm_set(m);
    let a = Polynomial::random_full(f, &x, seed).unwrap();
    let b = Polynomial::random_full(f, &x, seed + 1000).unwrap();
    let y = SetDescriptor::catalan(m + 2, n).unwrap();
    let sols = solve_pair_limited(&a, &b, &y, Some(1)).unwrap();
    let s = sols.first().unwrap_or_else(|| panic!("no solution for m={m}"));
    assert!(s.verified && s.is_nonzero() && s.recheck().unwrap());
    let (ok, res) = verify_solution(&s.equations, &s.unknowns).unwrap();
    assert!(ok && res.iter().all(Polynomial::is_zero));
}

#[test]
fn c03_xm_not_doubling() {
    criterion(3, "X_m not doubling", || {
        let mut detail = Vec::new();
        for m in 1..=4 {
            let (y, sy) = xm_count_and_ratio(m);
            detail.push(format!("m={m}: {sy}/{y}"));
        }
        // m = 5 needs |S_{7,22}| ~ 1.8e9: closed form only here
        let two = BigRational::from_integer(2.into());
        for m in 1..=6 {
            let t = xm_threshold(m);
            assert!(xm_ratio(m, t).unwrap() < two);
            assert!(xm_ratio(m, t - 1).unwrap() >= two);
        }
        for m in 1..=3 {
            for seed in 0..3 {
                xm_solution(m, 30 + seed);
            }
        }
        format!(
            "{}; m=5 by closed form; solutions for m<=3",
            detail.join(", ")
        )
    });
}

#[test]
#[ignore = "enumerates |S_{7,22}| ~ 1.8e9 monomials and solves a 2.4e6-unknown system"]
fn c03_xm_large() {
    criterion(3, "X_m not doubling, m = 4, 5", || {
        xm_solution(4, 7);
        let (y, sy) = xm_count_and_ratio(5);
        format!("m=5: {sy}/{y}")
    });
}

#[test]
fn c04_degree_one() {
    criterion(4, "degree-one construction", || {
        let mut r = rng(4);
        for m in 1..=6usize {
            let cert = certify(40 + m as u64, 3, 4 * m as u64 + 4, |g| {
                let (al, be) = generic_coefficients(g, m).unwrap();
                let (u, v) = degree_one_solution(g, &al, &be).unwrap();
                check_degree_one(g, &al, &be, &u, &v, m)
            });
            assert!(cert.holds(), "m={m}: {cert:?}");
            let f = Field::Rational;
            let mut done = 0;
            while done < 5 {
                let al: Vec<Scalar> = (0..=m).map(|_| random_rational(&mut r)).collect();
                let be: Vec<Scalar> = (0..=m).map(|_| random_rational(&mut r)).collect();
                match degree_one_solution(f, &al, &be) {
                    Ok((u, v)) => {
                        assert!(check_degree_one(f, &al, &be, &u, &v, m), "m={m}");
                        done += 1;
                    }
                    Err(Error::Degenerate(_)) => continue,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        "m=1..6, 3 generic seeds, 5 rational draws each".into()
    });
}

fn check_degree_one(f: Field, al: &[Scalar], be: &[Scalar], u: &Polynomial, v: &Polynomial, m: usize) -> bool {
    let a = Polynomial::linear(f, al);
    let b = Polynomial::linear(f, be);
    let x0m = Monomial::power(0, m);
    (&(&a * u) - &(&b * v)).is_zero()
        && u.is_homogeneous()
        && v.is_homogeneous()
        && u.degree() == Some(m)
        && v.degree() == Some(m)
        && u.max_index().unwrap_or(0) as usize <= 2 * m
        && v.max_index().unwrap_or(0) as usize <= 2 * m
        && !u.coefficient(&x0m).is_zero()
        && !v.coefficient(&x0m).is_zero()
}

#[test]
fn c05_basic_solution() {
    criterion(5, "basic solution", || {
        let mut r = rng(5);
        let f = Field::Rational;
        for _ in 0..20 {
            let al = random_rational(&mut r);
            let be = random_rational(&mut r);
            let (a, b) = basic_equation(f, &al, &be);
            let (u, v) = basic_solution(f, &al, &be).unwrap();
            assert!(!u.is_zero() && !v.is_zero());
            assert_eq!(&a * &u, &b * &v);
            let (nu, nv) = normalized_basic_solution(f, &al, &be).unwrap();
            assert_eq!(&a * &nu, &b * &nv);
        }
        // the displayed term lists, read with indeterminate coefficients
        let g = Field::Indeterminate { seed: 55 };
        let (al, be) = (g.indeterminate("a").unwrap(), g.indeterminate("b").unwrap());
        let (u, v) = basic_solution(g, &al, &be).unwrap();
        let u_disp = "b*x0*x3 + b*b*x0*x4 - a*x1*x3 - a*b*x1*x4 - a*b*x3^2 - a*b*b*x3*x4";
        let v_disp = "b*x0^2 - a*x0*x1 - a*a*x3^2 - a*a*b*x3*x4";
        assert_eq!(u, parse_polynomial(u_disp, g).unwrap());
        assert_eq!(v, parse_polynomial(v_disp, g).unwrap());
        let (nu, nv) = normalized_basic_solution(g, &be, &be).unwrap();
        let nu_disp = "x0*x3 + b*x0*x4 - x1*x3 - b*x1*x4 - b*x3^2 - b*b*x3*x4";
        let nv_disp = "x0^2 - x0*x1 - b*x3^2 - b*b*x3*x4";
        assert_eq!(nu, parse_polynomial(nu_disp, g).unwrap());
        assert_eq!(nv, parse_polynomial(nv_disp, g).unwrap());
        "20 rational (alpha, beta); displays match term by term".into()
    });
}

#[test]
fn c06_family() {
    criterion(6, "solution family", || {
        let f = Field::Rational;
        let mut r = rng(6);
        let mut members = 0;
        for d in 2..=5usize {
            for t in 0..200u64 {
                let al = random_rational(&mut r);
                let be = random_rational(&mut r);
                let params = FamilyParams::random(f, be.clone(), d, d as u32 + 2, 1000 * d as u64 + t).unwrap();
                let (u, v) = solution_family(f, &params, &al).unwrap();
                let (a, b) = basic_equation(f, &al, &be);
                assert_eq!(&a * &u, &b * &v, "d={d} t={t}");
                members += 1;
            }
        }
        // degree 2 by brute force over all monomials with indices <= 8
        for seed in 0..3 {
            let mut r = rng(60 + seed);
            let al = random_rational(&mut r);
            let be = random_rational(&mut r);
            let (a, b) = basic_equation(f, &al, &be);
            let support = SetDescriptor::explicit(all_monomials(2, 8));
            let sols = solve_pair_limited(&a, &b, &support, None).unwrap();
            assert_eq!(sols.len(), 1);
            let (u0, v0) = basic_solution(f, &al, &be).unwrap();
            let (u, v) = (&sols[0].unknowns[0], &sols[0].unknowns[1]);
            let (m, c) = u0.terms().next().unwrap();
            let s = f.div(&u.coefficient(m), c).unwrap();
            assert_eq!(u, &u0.scale(&s));
            assert_eq!(v, &v0.scale(&s));
        }
        format!("{members} members for d=2..5; degree-2 kernel is one-dimensional")
    });
}

#[test]
fn c07_s24_counting() {
    criterion(7, "S_{2,4} counting", || {
        let mut slack = Vec::new();
        for n in 5..=13u32 {
            let y = donnelly_y(n).unwrap();
            let size = y.enumerate().unwrap().len() as u64;
            assert_eq!(Some(size), donnelly_size(n).unwrap().to_u64(), "n={n}");
            let (e1, e2) = donnelly_exclusions(n).unwrap();
            assert!(e1.iter().chain(&e2).all(|w| in_catalan_set(w, 4, n)));
            assert!(e1.iter().all(|w| !e2.contains(w)));
            let c = s24_census(n, DEFAULT_PRODUCT_BUDGET).unwrap();
            assert_eq!(c.bound, s24_bound(n).unwrap().to_u64().unwrap());
            assert_eq!(c.record.bound_holds, Some(true), "n={n}");
            assert!(c.record.sy >= 2 * c.record.y, "n={n}");
            slack.push(c.bound - c.record.sy);
        }
        for n in 6..=12u32 {
            let (e1, e2) = donnelly_exclusions(n).unwrap();
            for d in e1.iter().chain(&e2) {
                assert_eq!(count_2simple_preimages(d, n), 3, "n={n} D={d}");
            }
        }
        let two = BigRational::from_integer(2.into());
        assert!(s24_bound_ratio(44).unwrap() >= two);
        assert!(s24_bound_ratio(45).unwrap() < two);
        assert_eq!(s24_threshold(5, 200).unwrap(), Some(45));
        for n in 6..=60 {
            assert_eq!(s24_cubic_ratio(n).unwrap(), s24_bound_ratio(n).unwrap(), "n={n}");
        }
        for n in 45..=400 {
            assert!(s24_bound_ratio(n).unwrap() < two, "n={n}");
        }
        format!("bound slack for n=5..13: {slack:?}; first n below 2 is 45")
    });
}

#[test]
fn c07_s24_products_never_halve() {
    // S_{2,4} S_{4,n} is never below doubling for n <= 12
    for n in 5..=12u32 {
        let rec = fmonoid_core::census::doubling_ratio(
            &SetDescriptor::catalan(2, 4).unwrap(),
            &SetDescriptor::catalan(4, n).unwrap(),
            DEFAULT_PRODUCT_BUDGET,
        )
        .unwrap();
        assert!(!rec.is_below_doubling(), "n={n}");
    }
}

#[test]
fn c08_minimal_n() {
    criterion(8, "minimal support search", || {
        let started = Instant::now();
        for pair_seed in [81, 82, 83] {
            let (a, b) = random_s24_pair(pair_seed).unwrap();
            let rep = minimal_support_search(&a, &b, &MinNConfig::new(5, 10, vec![1, 2, 3])).unwrap();
            assert_eq!(rep.rows.len(), 6);
            let last = rep.rows.last().unwrap();
            assert_eq!((last.n, last.rows, last.cols), (10, 4862, 4004));
            assert!(rep.rows.iter().all(|r| r.dims == vec![0, 0, 0]));
            assert_eq!(rep.first_n, None);
            assert!(rep.disagreements.is_empty());
        }
        assert!(started.elapsed() < Duration::from_secs(30 * 60));
        "3 pairs x 3 primes, dimension 0 for n=5..10".into()
    });
}

fn random_mixed_poly(r: &mut ChaCha8Rng) -> Polynomial {
    let f = Field::Rational;
    loop {
        let terms: Vec<(Monomial, Scalar)> = (0..r.gen_range(1..=6))
            .map(|_| {
                let deg = r.gen_range(0..=3);
                let w: Vec<u32> = (0..deg).map(|_| r.gen_range(0..=2)).collect();
                let mut c = 0;
                while c == 0 {
                    c = r.gen_range(-5..=5);
                }
                (normalize(&w), f.from_i64(c))
            })
            .collect();
        let p = Polynomial::from_terms(f, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn c09_reduce() {
    criterion(9, "width reduction", || {
        let mut r = rng(9);
        let (mut ok, mut budget) = (0, 0);
        for _ in 0..100 {
            let a = random_mixed_poly(&mut r);
            let b = random_mixed_poly(&mut r);
            match ore_reduce(&a, &b, &ReduceBudget::default()) {
                Ok(rep) => {
                    assert!(rep.verified && rep.is_nonzero(), "{a} / {b}");
                    let (v, res) = verify_solution(&rep.equations, &rep.unknowns).unwrap();
                    assert!(v && res.iter().all(Polynomial::is_zero));
                    let (u, w) = (&rep.unknowns[0], &rep.unknowns[1]);
                    assert_eq!(&a * u, &b * w);
                    ok += 1;
                }
                Err(Error::BudgetExhausted(_)) => budget += 1,
                Err(e) => panic!("{a} / {b}: {e}"),
            }
        }
        format!("{ok} solved exactly, {budget} budget reports")
    });
}

#[test]
fn c10_qk() {
    criterion(10, "Q_k products", || {
        let f = Field::Rational;
        let mut r = rng(10);
        for k in 1..=5 {
            for _ in 0..5 {
                let pairs: Vec<(Scalar, Scalar)> = (0..k)
                    .map(|_| (random_rational(&mut r), random_rational(&mut r)))
                    .collect();
                let us = qk_system_solution(f, &pairs, QkReading::Diagonal).unwrap();
                let p = qk_product(f, &pairs, QkReading::Diagonal);
                for ((al, be), u) in pairs.iter().zip(&us) {
                    let l = Polynomial::linear(f, &[al.clone(), be.clone()]);
                    assert_eq!(&l * u, p);
                }
                if k > 1 {
                    let (ok, _) = verify_solution(&qk_equations(f, &pairs), &us).unwrap();
                    assert!(ok);
                }
            }
        }
        "k=1..5, 5 draws each".into()
    });
}

#[test]
fn sparse_matrix_is_exported() {
    let m = SparseMatrix::new(2, 3, Field::Rational);
    assert_eq!(m.nullspace().len(), 3);
}
