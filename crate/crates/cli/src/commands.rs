//! One function per subcommand. Each returns its output and exit status.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use fmonoid_core::census::{
    self, count_2simple_preimages, donnelly_exclusions, donnelly_size, donnelly_y,
    minimal_support_search, s24_bound, s24_bound_ratio, s24_census, xm_census, CensusRecord,
    MinNConfig, DEFAULT_PRODUCT_BUDGET,
};
use fmonoid_core::constructions::{
    basic_equation, basic_solution, degree_one_solution, generic_coefficients,
    normalized_basic_solution, qk_equations, qk_product, qk_system_solution, solution_family,
    FamilyParams, QkReading,
};
use fmonoid_core::monomial::right_lcm;
use fmonoid_core::monomial::left_quotient;
use fmonoid_core::ore::{
    ore_reduce, pair_equation, solve_linear_system, solve_pair_limited, ReduceBudget,
    SolutionReport,
};
use fmonoid_core::sets::in_catalan_set;
use fmonoid_core::{Field, Polynomial, Scalar, SetDescriptor};

use crate::input::{self, CliError, CliResult};
use crate::{suites, Cli, Command, Output, Reading};

/// Sets larger than this are refused by `enumerate`.
const ENUMERATE_LIMIT: u64 = 5_000_000;

pub fn run(cli: &Cli) -> CliResult<(Output, u8)> {
    let f = input::field(&cli.global.field)?;
    let timings = cli.global.timings;
    match &cli.command {
        Command::Normalize { word } => normalize(word),
        Command::Mul { left, right } => mul(f, left, right),
        Command::Lcm {
            left,
            right,
            max_degree,
        } => lcm(left, right, *max_degree),
        Command::Enumerate { set } => enumerate(set),
        Command::Count { set } => count(set),
        Command::SolvePair { pair, support, limit } => {
            let (a, b) = (input::polynomial(&pair.a, f)?, input::polynomial(&pair.b, f)?);
            solve_pair_cmd(&a, &b, support, *limit)
        }
        Command::SolveSystem { system } => solve_system(f, system),
        Command::Reduce {
            pair,
            max_support,
            max_degree,
            minimal,
        } => {
            let (a, b) = (input::polynomial(&pair.a, f)?, input::polynomial(&pair.b, f)?);
            let budget = ReduceBudget {
                max_support: *max_support,
                max_degree: *max_degree,
                minimal_components: *minimal,
            };
            reports_output("reduce", &[ore_reduce(&a, &b, &budget)?])
        }
        Command::ConstructDeg1 {
            alpha,
            beta,
            m,
            seed,
        } => construct_deg1(f, alpha.as_deref(), beta.as_deref(), *m, *seed),
        Command::BasicSolution {
            alpha,
            beta,
            normalized,
        } => {
            let (al, be) = (input::scalar(alpha, f)?, input::scalar(beta, f)?);
            let (u, v) = if *normalized {
                normalized_basic_solution(f, &al, &be)?
            } else {
                basic_solution(f, &al, &be)?
            };
            let (a, b) = basic_equation(f, &al, &be);
            let r = SolutionReport::new(pair_equation(&a, &b), vec![u, v], Vec::new(), 1, "basic-solution");
            reports_output("basic-solution", &[r])
        }
        Command::Family {
            alpha,
            beta,
            degree,
            max_index,
            seed,
        } => {
            let (al, be) = (input::scalar(alpha, f)?, input::scalar(beta, f)?);
            let max_index = max_index.unwrap_or(*degree as u32 + 2);
            let params = FamilyParams::random(f, be.clone(), *degree, max_index, *seed)?;
            let (u, v) = solution_family(f, &params, &al)?;
            let (a, b) = basic_equation(f, &al, &be);
            let r = SolutionReport::new(pair_equation(&a, &b), vec![u, v], Vec::new(), 1, "family");
            reports_output("family", &[r])
        }
        Command::Qk {
            pairs,
            k,
            seed,
            reading,
        } => qk(f, pairs.as_deref(), *k, *seed, *reading),
        Command::CensusXm { m, range } => census_xm(*m, range.n_from, range.n_to, timings),
        Command::CensusDonnelly { range } => census_donnelly(range.n_from, range.n_to),
        Command::CensusS24 { range, formula } => {
            if *formula {
                census_s24_formula(range.n_from, range.n_to)
            } else {
                census_s24(range.n_from, range.n_to, timings)
            }
        }
        Command::MinN {
            pair,
            n_from,
            n_to,
            seeds,
            seed_base,
            max_unknowns,
        } => {
            let (a, b) = (input::polynomial(&pair.a, f)?, input::polynomial(&pair.b, f)?);
            let config = MinNConfig {
                n_from: *n_from,
                n_to: *n_to,
                seeds: input::seeds(seeds, *seed_base)?,
                max_unknowns: *max_unknowns,
            };
            min_n(&a, &b, &config, timings)
        }
        Command::Verify { report, suite } => match report {
            Some(path) => verify_reports(path),
            None => suites::run(suite),
        },
    }
}

fn normalize(word: &str) -> CliResult<(Output, u8)> {
    let m = input::monomial(word)?;
    let out = Output::new(
        format!("{m}\n"),
        json!({ "input": word, "normal_form": m.to_string(), "indices": m.indices() }),
    )?;
    Ok((out, 0))
}

fn mul(f: Field, left: &str, right: &str) -> CliResult<(Output, u8)> {
    let p = &input::polynomial(left, f)? * &input::polynomial(right, f)?;
    Ok((Output::new(format!("{p}\n"), &p)?, 0))
}

fn lcm(left: &str, right: &str, max_degree: Option<usize>) -> CliResult<(Output, u8)> {
    let (a, b) = (input::monomial(left)?, input::monomial(right)?);
    let l = right_lcm(&a, &b, max_degree)?;
    let qa = left_quotient(&a, &l).expect("lcm is a right multiple of a");
    let qb = left_quotient(&b, &l).expect("lcm is a right multiple of b");
    let out = Output::new(
        format!("{l}\n"),
        json!({
            "left": a.to_string(),
            "right": b.to_string(),
            "lcm": l.to_string(),
            "left_cofactor": qa.to_string(),
            "right_cofactor": qb.to_string(),
        }),
    )?;
    Ok((out, 0))
}

fn enumerate(set: &str) -> CliResult<(Output, u8)> {
    let s = input::set(set)?;
    let len = s.len()?;
    if len > ENUMERATE_LIMIT.into() {
        return Err(CliError::Input(format!(
            "{s} has {len} elements; use count instead"
        )));
    }
    let elems: Vec<String> = s.iter()?.map(|m| m.to_string()).collect();
    let mut text = elems.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    let mut out = Output::new(text.clone(), json!({ "set": s.to_string(), "elements": elems }))?;
    out.csv = Some(format!("monomial\n{text}"));
    Ok((out, 0))
}

fn count(set: &str) -> CliResult<(Output, u8)> {
    let s = input::set(set)?;
    let n = s.len()?;
    let out = Output::new(
        format!("{n}\n"),
        json!({ "set": s.to_string(), "count": n.to_string() }),
    )?;
    Ok((out, 0))
}

fn report_text(r: &SolutionReport) -> String {
    let mut t = String::new();
    for (i, u) in r.unknowns.iter().enumerate() {
        let name = match (r.unknowns.len(), i) {
            (2, 0) => "u".to_string(),
            (2, 1) => "v".to_string(),
            _ => format!("u{}", i + 1),
        };
        let _ = writeln!(t, "{name} = {u}");
    }
    let _ = writeln!(t, "field: {}", r.field);
    if !r.supports.is_empty() {
        let _ = writeln!(t, "supports: {}", r.supports.join(" "));
    }
    let _ = writeln!(t, "verified: {}", r.verified);
    t
}

fn reports_output(command: &str, reports: &[SolutionReport]) -> CliResult<(Output, u8)> {
    let text: Vec<String> = reports.iter().map(report_text).collect();
    let out = Output::new(
        text.join("\n"),
        json!({ "command": command, "reports": reports }),
    )?;
    let ok = reports.iter().all(|r| r.verified && r.is_nonzero());
    Ok((out, if ok { 0 } else { 1 }))
}

fn solve_pair_cmd(a: &Polynomial, b: &Polynomial, support: &str, limit: usize) -> CliResult<(Output, u8)> {
    let s = input::set(support)?;
    let reports = solve_pair_limited(a, b, &s, Some(limit.max(1)))?;
    if reports.is_empty() {
        return Err(CliError::NoSolution(format!("only the zero solution on {s}")));
    }
    reports_output("solve-pair", &reports)
}

#[derive(Deserialize)]
struct SystemFile {
    #[serde(default)]
    field: Option<String>,
    equations: Vec<Vec<String>>,
    supports: Vec<String>,
}

fn solve_system(f: Field, path: &str) -> CliResult<(Output, u8)> {
    let text = input::read_arg(path)?;
    let sys: SystemFile = serde_json::from_str(&text)?;
    let f = match &sys.field {
        Some(name) => input::field(name)?,
        None => f,
    };
    let coeffs = sys
        .equations
        .iter()
        .map(|row| row.iter().map(|p| input::polynomial(p, f)).collect())
        .collect::<CliResult<Vec<Vec<Polynomial>>>>()?;
    let supports = sys
        .supports
        .iter()
        .map(|s| input::set(s))
        .collect::<CliResult<Vec<SetDescriptor>>>()?;
    match solve_linear_system(coeffs, &supports)? {
        Some(r) => reports_output("solve-system", &[r]),
        None => Err(CliError::NoSolution("only the zero solution on the given supports".into())),
    }
}

fn random_nonzero(f: Field, rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| f.random_nonzero(rng)).collect()
}

fn construct_deg1(
    f: Field,
    alpha: Option<&str>,
    beta: Option<&str>,
    m: usize,
    seed: u64,
) -> CliResult<(Output, u8)> {
    let (al, be) = match (alpha, beta) {
        (Some(a), Some(b)) => (input::scalars(a, f)?, input::scalars(b, f)?),
        _ if matches!(f, Field::Indeterminate { .. }) => generic_coefficients(f, m)?,
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (random_nonzero(f, &mut rng, m + 1), random_nonzero(f, &mut rng, m + 1))
        }
    };
    let (u, v) = degree_one_solution(f, &al, &be)?;
    let (a, b) = (Polynomial::linear(f, &al), Polynomial::linear(f, &be));
    let r = SolutionReport::new(pair_equation(&a, &b), vec![u, v], Vec::new(), 1, "degree-one");
    let (mut out, status) = reports_output("construct-deg1", &[r])?;
    out.text = format!("a = {a}\nb = {b}\n{}", out.text);
    Ok((out, status))
}

fn qk(f: Field, pairs: Option<&str>, k: usize, seed: u64, reading: Reading) -> CliResult<(Output, u8)> {
    let pairs: Vec<(Scalar, Scalar)> = match pairs {
        Some(text) => text
            .split(',')
            .map(|p| {
                let (a, b) = p
                    .split_once(':')
                    .ok_or_else(|| CliError::Input(format!("expected alpha:beta, got {p:?}")))?;
                Ok((input::scalar(a.trim(), f)?, input::scalar(b.trim(), f)?))
            })
            .collect::<CliResult<_>>()?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k)
                .map(|_| (f.random_nonzero(&mut rng), f.random_nonzero(&mut rng)))
                .collect()
        }
    };
    let reading = match reading {
        Reading::Diagonal => QkReading::Diagonal,
        Reading::Shifted => QkReading::Shifted,
        Reading::Literal => QkReading::Literal,
    };
    let us = qk_system_solution(f, &pairs, reading)?;
    let p = qk_product(f, &pairs, reading);
    let agree = pairs.iter().zip(&us).all(|((al, be), u)| {
        &Polynomial::linear(f, &[al.clone(), be.clone()]) * u == p
    });
    let r = SolutionReport::new(qk_equations(f, &pairs), us, Vec::new(), 1, "qk");
    let (mut out, status) = reports_output("qk", &[r])?;
    out.text = format!("P = {p}\n{}products agree: {agree}\n", out.text);
    Ok((out, if agree { status } else { 1 }))
}

fn strip_timing(mut r: CensusRecord, timings: bool) -> CensusRecord {
    if !timings {
        r.runtime_ms = 0;
    }
    r
}

fn census_output(command: &str, config: serde_json::Value, records: &[CensusRecord]) -> CliResult<Output> {
    let csv = census::to_csv(records);
    let mut out = Output::new(
        csv.replace(',', "\t"),
        json!({ "command": command, "config": config, "records": records }),
    )?;
    out.csv = Some(csv);
    Ok(out)
}

fn census_xm(m: u32, n_from: u32, n_to: u32, timings: bool) -> CliResult<(Output, u8)> {
    let started = Instant::now();
    let ns: Vec<u32> = (n_from.max(m + 2)..=n_to).collect();
    let records = ns
        .par_iter()
        .map(|&n| xm_census(m, n, DEFAULT_PRODUCT_BUDGET).map(|r| strip_timing(r, timings)))
        .collect::<Result<Vec<_>, _>>()?;
    eprintln!("census-xm: {} rows in {:.2?}", records.len(), started.elapsed());
    let out = census_output(
        "census-xm",
        json!({ "m": m, "n_from": n_from, "n_to": n_to }),
        &records,
    )?;
    Ok((out, 0))
}

#[derive(Serialize)]
struct DonnellyRow {
    n: u32,
    y_enumerated: u64,
    y_formula: String,
    exclusions_ok: bool,
    preimages_min: usize,
    preimages_max: usize,
}

fn census_donnelly(n_from: u32, n_to: u32) -> CliResult<(Output, u8)> {
    let ns: Vec<u32> = (n_from.max(5)..=n_to).collect();
    let rows = ns
        .par_iter()
        .map(|&n| -> CliResult<DonnellyRow> {
            let y = donnelly_y(n)?.len()?.to_u64().unwrap_or(u64::MAX);
            let (e1, e2) = donnelly_exclusions(n)?;
            let exclusions_ok = e1.iter().chain(&e2).all(|w| in_catalan_set(w, 4, n))
                && e1.iter().all(|w| !e2.contains(w));
            let counts: Vec<usize> = e1
                .iter()
                .chain(&e2)
                .map(|d| count_2simple_preimages(d, n))
                .collect();
            Ok(DonnellyRow {
                n,
                y_enumerated: y,
                y_formula: donnelly_size(n)?.to_string(),
                exclusions_ok,
                preimages_min: counts.iter().copied().min().unwrap_or(0),
                preimages_max: counts.iter().copied().max().unwrap_or(0),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut csv = String::from("n,Y,Y_formula,exclusions_ok,preimages_min,preimages_max\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.n, r.y_enumerated, r.y_formula, r.exclusions_ok, r.preimages_min, r.preimages_max
        );
    }
    let ok = rows
        .iter()
        .all(|r| r.exclusions_ok && r.y_formula == r.y_enumerated.to_string());
    let mut out = Output::new(
        csv.replace(',', "\t"),
        json!({ "command": "census-donnelly", "config": { "n_from": n_from, "n_to": n_to }, "rows": rows }),
    )?;
    out.csv = Some(csv);
    Ok((out, if ok { 0 } else { 1 }))
}

fn census_s24(n_from: u32, n_to: u32, timings: bool) -> CliResult<(Output, u8)> {
    let started = Instant::now();
    let ns: Vec<u32> = (n_from.max(5)..=n_to).collect();
    let rows = ns
        .par_iter()
        .map(|&n| s24_census(n, DEFAULT_PRODUCT_BUDGET))
        .collect::<Result<Vec<_>, _>>()?;
    eprintln!("census-s24: {} rows in {:.2?}", rows.len(), started.elapsed());
    let records: Vec<CensusRecord> = rows
        .iter()
        .map(|r| strip_timing(r.record.clone(), timings))
        .collect();
    let csv = census::to_csv(&records);
    let mut text = String::from("n\tY\tSY\tbound\tdeficit\t6c(n-4)\tbound_holds\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.record.n.unwrap_or(0),
            r.record.y,
            r.record.sy,
            r.bound,
            r.deficit,
            r.predicted_deficit,
            r.record.bound_holds.unwrap_or(false)
        );
    }
    let rows: Vec<_> = rows
        .into_iter()
        .map(|mut r| {
            r.record = strip_timing(r.record, timings);
            r
        })
        .collect();
    let ok = rows.iter().all(|r| r.record.bound_holds == Some(true));
    let mut out = Output::new(
        text,
        json!({ "command": "census-s24", "config": { "n_from": n_from, "n_to": n_to }, "rows": rows }),
    )?;
    out.csv = Some(csv);
    Ok((out, if ok { 0 } else { 1 }))
}

/// Closed-form rows: `Y = b_{n,4} - 2c_{n-4}`, `SY` the bound
/// `b_{n,2} - 6c_{n-4}`, and `bound_holds` whether their ratio is below 2.
fn census_s24_formula(n_from: u32, n_to: u32) -> CliResult<(Output, u8)> {
    let two = num_rational::BigRational::from_integer(2.into());
    let mut csv = String::from("n,Y,SY_bound,ratio_num,ratio_den,below_two\n");
    let mut rows = Vec::new();
    for n in n_from.max(5)..=n_to {
        let q = s24_bound_ratio(n)?;
        let below = q < two;
        let (y, sy) = (donnelly_size(n)?.to_string(), s24_bound(n)?.to_string());
        let _ = writeln!(csv, "{n},{y},{sy},{},{},{below}", q.numer(), q.denom());
        rows.push(json!({
            "n": n, "Y": y, "SY_bound": sy,
            "ratio_num": q.numer().to_string(), "ratio_den": q.denom().to_string(),
            "below_two": below,
        }));
    }
    let mut out = Output::new(
        csv.replace(',', "\t"),
        json!({ "command": "census-s24", "config": { "n_from": n_from, "n_to": n_to, "formula": true }, "rows": rows }),
    )?;
    out.csv = Some(csv);
    Ok((out, 0))
}

fn min_n(a: &Polynomial, b: &Polynomial, config: &MinNConfig, timings: bool) -> CliResult<(Output, u8)> {
    let started = Instant::now();
    let mut rep = minimal_support_search(a, b, config)?;
    eprintln!("min-n: {} values of n in {:.2?}", rep.rows.len(), started.elapsed());
    if !timings {
        for r in &mut rep.rows {
            r.runtime_ms = 0;
        }
    }
    let mut text = rep.to_table();
    match rep.first_n {
        Some(n) => {
            let _ = writeln!(text, "first n with a solution under every seed: {n}");
        }
        None => {
            let _ = writeln!(text, "no solution in range");
        }
    }
    if let Some(n) = rep.budget_stop {
        let _ = writeln!(text, "stopped at n = {n}: system exceeds {} unknowns", config.max_unknowns);
    }
    if !rep.disagreements.is_empty() {
        let _ = writeln!(text, "seeds disagree at n = {:?}", rep.disagreements);
    }
    let _ = writeln!(text, "note: {}", rep.caveat);
    let mut csv = String::from("n,rows,cols,dims\n");
    for r in &rep.rows {
        let dims: Vec<String> = r.dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(csv, "{},{},{},{}", r.n, r.rows, r.cols, dims.join(";"));
    }
    let status = if rep.first_n.is_some() { 0 } else { 1 };
    let mut out = Output::new(
        text,
        json!({ "command": "min-n", "config": config, "a": a, "b": b, "result": rep }),
    )?;
    out.csv = Some(csv);
    Ok((out, status))
}

/// Every object with `equations` and `unknowns` found anywhere in the JSON.
fn collect_reports(v: &serde_json::Value, out: &mut Vec<serde_json::Value>) {
    match v {
        serde_json::Value::Object(map) => {
            if map.contains_key("equations") && map.contains_key("unknowns") {
                out.push(v.clone());
            } else {
                map.values().for_each(|x| collect_reports(x, out));
            }
        }
        serde_json::Value::Array(items) => items.iter().for_each(|x| collect_reports(x, out)),
        _ => {}
    }
}

fn verify_reports(path: &str) -> CliResult<(Output, u8)> {
    let text = input::read_arg(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let mut found = Vec::new();
    collect_reports(&value, &mut found);
    if found.is_empty() {
        return Err(CliError::Input(format!("no solution reports in {path}")));
    }
    let mut lines = String::new();
    let mut results = Vec::new();
    for (i, v) in found.into_iter().enumerate() {
        let r: SolutionReport = serde_json::from_value(v)?;
        let ok = r.recheck()? && r.is_nonzero();
        let _ = writeln!(lines, "report {}: {}", i + 1, if ok { "verified" } else { "FAILED" });
        results.push(ok);
    }
    let all = results.iter().all(|&b| b);
    let out = Output::new(lines, json!({ "verified": results }))?;
    Ok((out, if all { 0 } else { 1 }))
}
