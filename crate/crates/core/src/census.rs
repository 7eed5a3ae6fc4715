//! Counting experiments on products of monomial sets and the search for the
//! smallest support admitting a solution.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ore::{pair_equation, OreSystem, SolutionReport};
use crate::poly::Polynomial;
use crate::sets::{catalan, catalan_triangle, CatalanIndex, SetDescriptor};

/// `|S Y|` against `|Y|` for one pair of sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: Option<u32>,
    pub y: u64,
    pub sy: u64,
    /// `|SY| / |Y|` in lowest terms.
    pub ratio_num: u64,
    pub ratio_den: u64,
    /// Closed-form prediction of the ratio, when one applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<(u64, u64)>,
    /// Whether the count satisfies the bound under test, when one applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_holds: Option<bool>,
    pub runtime_ms: u64,
}

impl CensusRecord {
    fn new(n: Option<u32>, y: u64, sy: u64, started: Instant) -> Self {
        let g = num_integer::gcd(sy, y.max(1));
        CensusRecord {
            n,
            y,
            sy,
            ratio_num: sy / g,
            ratio_den: y.max(1) / g,
            closed_form: None,
            bound_holds: None,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// `|SY| < 2 |Y|`.
    pub fn is_below_doubling(&self) -> bool {
        self.sy < 2 * self.y
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.ratio_num.into(), self.ratio_den.into())
    }

    pub fn csv_header() -> &'static str {
        "n,Y,SY,ratio_num,ratio_den,bound_holds"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            self.y,
            self.sy,
            self.ratio_num,
            self.ratio_den,
            self.bound_holds.map(|b| b.to_string()).unwrap_or_default()
        )
    }
}

/// Renders records as CSV with the standard header.
pub fn to_csv(records: &[CensusRecord]) -> String {
    let mut out = String::from(CensusRecord::csv_header());
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Largest `|S| * |Y|` product count attempted by default.
pub const DEFAULT_PRODUCT_BUDGET: u64 = 200_000_000;

/// Exact `|S Y|` by duplicate-free enumeration of all products.
pub fn doubling_ratio(s: &SetDescriptor, y: &SetDescriptor, budget: u64) -> Result<CensusRecord> {
    let started = Instant::now();
    let s_elems = s.enumerate()?;
    let y_len = y
        .len()?
        .to_u64()
        .ok_or_else(|| Error::BudgetExhausted("|Y| exceeds u64".into()))?;
    if (s_elems.len() as u64).saturating_mul(y_len) > budget {
        return Err(Error::BudgetExhausted(format!(
            "{} x {y_len} products exceed the budget of {budget}",
            s_elems.len()
        )));
    }
    let n = match y {
        SetDescriptor::Catalan { n, .. } | SetDescriptor::CatalanMinus { n, .. } => Some(*n),
        SetDescriptor::Explicit { .. } => None,
    };
    let sy = match product_index(&s_elems, y)? {
        Some(index) => count_with_bitset(&s_elems, y, &index)?,
        None => count_with_hashset(&s_elems, y)?,
    };
    Ok(CensusRecord::new(n, y_len, sy, started))
}

/// If every element of `S` has degree `d` and lies in `S_{k-d,k}` while `Y`
/// is (a subset of) `S_{k,n}`, all products lie in `S_{k-d,n}`.
fn product_index(s: &[Monomial], y: &SetDescriptor) -> Result<Option<CatalanIndex>> {
    let (k, n) = match y {
        SetDescriptor::Catalan { k, n } | SetDescriptor::CatalanMinus { k, n, .. } => (*k, *n),
        SetDescriptor::Explicit { .. } => return Ok(None),
    };
    let Some(d) = s.first().map(Monomial::degree) else {
        return Ok(None);
    };
    let d = d as u32;
    if d >= k || s.iter().any(|w| !crate::sets::in_catalan_set(w, k - d, k)) {
        return Ok(None);
    }
    Ok(CatalanIndex::new(k - d, n).ok())
}

fn count_with_bitset(s: &[Monomial], y: &SetDescriptor, index: &CatalanIndex) -> Result<u64> {
    let mut seen = vec![0u64; (index.len() as usize).div_ceil(64)];
    let mut count = 0u64;
    for w in y.iter()? {
        for a in s {
            let r = index
                .rank(&a.multiply(&w))
                .expect("product lies in the predicted set") as usize;
            let bit = 1u64 << (r % 64);
            if seen[r / 64] & bit == 0 {
                seen[r / 64] |= bit;
                count += 1;
            }
        }
    }
    Ok(count)
}

fn count_with_hashset(s: &[Monomial], y: &SetDescriptor) -> Result<u64> {
    let mut seen = HashSet::new();
    for w in y.iter()? {
        for a in s {
            seen.insert(a.multiply(&w));
        }
    }
    Ok(seen.len() as u64)
}

/// `X_m = {x_0, ..., x_m}`.
pub fn xm_set(m: u32) -> SetDescriptor {
    SetDescriptor::explicit((0..=m).map(Monomial::generator))
}

/// `|X_m S_{m+2,n}| / |S_{m+2,n}| = (m+1)/(m+2) * (2n-m-2)/(n-m-1)`.
pub fn xm_ratio(m: u32, n: u32) -> Result<BigRational> {
    if n <= m + 1 {
        return Err(Error::param(format!("xm_ratio needs n > m + 1, got m={m}, n={n}")));
    }
    let num = BigInt::from(m + 1) * BigInt::from(2 * n - m - 2);
    let den = BigInt::from(m + 2) * BigInt::from(n - m - 1);
    Ok(BigRational::new(num, den))
}

/// Smallest `n` with `xm_ratio(m, n) < 2`, namely `(m+1)(m+2)/2 + 1`.
pub fn xm_threshold(m: u32) -> u32 {
    (m + 1) * (m + 2) / 2 + 1
}

/// Census of `X_m S_{m+2,n}` with the closed form attached.
pub fn xm_census(m: u32, n: u32, budget: u64) -> Result<CensusRecord> {
    let y = SetDescriptor::catalan(m + 2, n)?;
    let mut rec = doubling_ratio(&xm_set(m), &y, budget)?;
    let q = xm_ratio(m, n)?;
    rec.closed_form = Some((
        q.numer().to_u64().expect("small"),
        q.denom().to_u64().expect("small"),
    ));
    rec.bound_holds = Some(rec.ratio() == q);
    Ok(rec)
}

/// The two excluded families inside `S_{4,n}`: `phi(S_{1,n-3})` and
/// `phi^2(S_{1,n-3})`.
pub fn donnelly_exclusions(n: u32) -> Result<(Vec<Monomial>, Vec<Monomial>)> {
    if n < 5 {
        return Err(Error::param(format!("donnelly_y needs n >= 5, got {n}")));
    }
    let base = SetDescriptor::catalan(1, n - 3)?.enumerate()?;
    Ok((
        base.iter().map(|w| w.shift(1)).collect(),
        base.iter().map(|w| w.shift(2)).collect(),
    ))
}

/// `S_{4,n}` minus both excluded families; `|Y| = b_{n,4} - 2 c_{n-4}`.
pub fn donnelly_y(n: u32) -> Result<SetDescriptor> {
    let (e1, e2) = donnelly_exclusions(n)?;
    let mut excluded = e1;
    excluded.extend(e2);
    excluded.sort();
    Ok(SetDescriptor::CatalanMinus { k: 4, n, excluded })
}

/// `b_{n,4} - 2 c_{n-4}`.
pub fn donnelly_size(n: u32) -> Result<BigUint> {
    if n < 5 {
        return Err(Error::param(format!("donnelly_size needs n >= 5, got {n}")));
    }
    Ok(catalan_triangle(n, 4)? - catalan(n - 4) * 2u32)
}

/// `b_{n,2} - 6 c_{n-4}`, the bound on `|S_{2,4} Y|`.
pub fn s24_bound(n: u32) -> Result<BigUint> {
    if n < 5 {
        return Err(Error::param(format!("s24_bound needs n >= 5, got {n}")));
    }
    Ok(catalan_triangle(n, 2)? - catalan(n - 4) * 6u32)
}

/// `(b_{n,2} - 6 c_{n-4}) / (b_{n,4} - 2 c_{n-4})`.
pub fn s24_bound_ratio(n: u32) -> Result<BigRational> {
    let num = BigInt::from(s24_bound(n)?);
    let den = BigInt::from(donnelly_size(n)?);
    if den.is_zero() {
        return Err(Error::param(format!("|Y| vanishes at n={n}")));
    }
    Ok(BigRational::new(num, den))
}

/// `(29n^3 - 231n^2 + 562n - 420) / (3 (5n^3 - 47n^2 + 142n - 140))`.
pub fn s24_cubic_ratio(n: u32) -> Result<BigRational> {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let num: BigInt = BigInt::from(29) * &n3 - BigInt::from(231) * &n2 + BigInt::from(562) * &n - 420;
    let den: BigInt = BigInt::from(3)
        * (BigInt::from(5) * &n3 - BigInt::from(47) * &n2 + BigInt::from(142) * &n - 140);
    if den.is_zero() {
        return Err(Error::param("cubic denominator vanishes"));
    }
    Ok(BigRational::new(num, den))
}

/// Smallest `n` in `from..=to` where the bound ratio drops below 2.
pub fn s24_threshold(from: u32, to: u32) -> Result<Option<u32>> {
    let two = BigRational::from_integer(2.into());
    for n in from.max(5)..=to {
        if s24_bound_ratio(n)? < two {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Enumerated `|S_{2,4} Y|` for the Donnelly set, with `bound_holds`
/// recording `|SY| <= b_{n,2} - 6 c_{n-4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S24Census {
    pub record: CensusRecord,
    pub bound: u64,
    /// `b_{n,2} - |SY|`: elements of `S_{2,n}` missed by `SY`.
    pub deficit: u64,
    /// `6 c_{n-4}`.
    pub predicted_deficit: u64,
}

pub fn s24_census(n: u32, budget: u64) -> Result<S24Census> {
    let y = donnelly_y(n)?;
    let s = SetDescriptor::catalan(2, 4)?;
    let mut record = doubling_ratio(&s, &y, budget)?;
    let bound = s24_bound(n)?.to_u64().expect("enumerable sizes fit");
    record.bound_holds = Some(record.sy <= bound);
    let full = crate::sets::catalan_triangle_u64(n, 2)?;
    Ok(S24Census {
        record: record.clone(),
        bound,
        deficit: full - record.sy,
        predicted_deficit: (catalan(n - 4) * 6u32).to_u64().expect("small"),
    })
}

/// Indices `i` with `x_i` left-dividing `w`: the top cells of the diagram.
pub fn top_cells(w: &Monomial) -> Vec<u32> {
    let Some(max) = w.max_index() else {
        return Vec::new();
    };
    (0..=max).filter(|&i| w.is_left_divisible_by_generator(i)).collect()
}

/// Removes the top cell `x_i`; `None` when `x_i` is not a top cell.
pub fn remove_top(w: &Monomial, i: u32) -> Option<Monomial> {
    w.left_divide_generator(i)
}

pub fn is_simple(w: &Monomial) -> bool {
    top_cells(w).len() == 1
}

pub fn is_2simple(w: &Monomial) -> bool {
    match top_cells(w).as_slice() {
        [i] => is_simple(&remove_top(w, *i).expect("top cell divides")),
        _ => false,
    }
}

/// The 2-simple elements of `S_{2,n}` that reduce to `d` after removing
/// the top cell twice.
pub fn two_simple_preimages(d: &Monomial, n: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    let bound = d.max_index().unwrap_or(0) + 3;
    for j in 0..=bound {
        let once = d.mul_generator_left(j);
        for i in 0..=bound + 1 {
            let w = once.mul_generator_left(i);
            if !crate::sets::in_catalan_set(&w, 2, n) || !is_2simple(&w) {
                continue;
            }
            let t = top_cells(&w)[0];
            let r1 = remove_top(&w, t).unwrap();
            let t1 = top_cells(&r1)[0];
            if remove_top(&r1, t1).as_ref() == Some(d) {
                out.push(w);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn count_2simple_preimages(d: &Monomial, n: u32) -> usize {
    two_simple_preimages(d, n).len()
}

/// Per-`n` outcome of the minimal support search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinNRow {
    pub n: u32,
    pub rows: usize,
    pub cols: usize,
    /// Kernel dimension under each seed's prime field.
    pub dims: Vec<usize>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinNReport {
    pub seeds: Vec<u64>,
    pub fields: Vec<Field>,
    pub rows: Vec<MinNRow>,
    /// First `n` with a nonzero kernel under every seed.
    pub first_n: Option<u32>,
    /// Values of `n` where the seeds disagree on whether the kernel is zero.
    pub disagreements: Vec<u32>,
    /// A verified solution at `first_n` over the first seed's field.
    pub solution: Option<SolutionReport>,
    /// First `n` skipped because its system exceeds the unknown budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_stop: Option<u32>,
    pub caveat: String,
}

impl MinNReport {
    pub fn to_table(&self) -> String {
        let mut out = String::from("n\trows\tcols\tdims\n");
        for r in &self.rows {
            let dims: Vec<String> = r.dims.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.n, r.rows, r.cols, dims.join(",")));
        }
        out
    }
}

/// Range, seeds and size budget for [`minimal_support_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinNConfig {
    pub n_from: u32,
    pub n_to: u32,
    pub seeds: Vec<u64>,
    /// Largest number of unknowns `2 |S_{4,n}|` attempted.
    pub max_unknowns: u64,
}

/// Covers `n <= 10`; `n = 11` has 14144 unknowns and fills in badly.
pub const DEFAULT_MAX_UNKNOWNS: u64 = 10_000;

impl MinNConfig {
    pub fn new(n_from: u32, n_to: u32, seeds: Vec<u64>) -> Self {
        MinNConfig {
            n_from,
            n_to,
            seeds,
            max_unknowns: DEFAULT_MAX_UNKNOWNS,
        }
    }
}

/// For each `n` in the configured range, the dimension of the space of
/// `(u, v)` supported on `S_{4,n}` with `a u = b v`, computed over one random
/// prime field per seed. `a`, `b` must be rational (or already over a prime
/// field, in which case every seed reuses it). Stops at the first `n` whose
/// system exceeds the unknown budget.
pub fn minimal_support_search(
    a: &Polynomial,
    b: &Polynomial,
    config: &MinNConfig,
) -> Result<MinNReport> {
    let seeds = &config.seeds;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("search coefficients"));
    }
    if seeds.is_empty() {
        return Err(Error::param("at least one seed is required"));
    }
    let fields: Vec<Field> = seeds
        .iter()
        .map(|&s| match a.field() {
            Field::Rational => Field::random_prime(s),
            f => f,
        })
        .collect();
    let reduced: Vec<(Polynomial, Polynomial)> = fields
        .iter()
        .map(|&f| {
            a.to_field(f)
                .zip(b.to_field(f))
                .ok_or_else(|| Error::param(format!("coefficients do not reduce into {f}")))
        })
        .collect::<Result<_>>()?;
    let mut ns = Vec::new();
    let mut budget_stop = None;
    for n in config.n_from.max(4)..=config.n_to {
        if 2 * crate::sets::catalan_triangle_u64(n, 4)? > config.max_unknowns {
            budget_stop = Some(n);
            break;
        }
        ns.push(n);
    }
    let rows: Vec<MinNRow> = ns
        .par_iter()
        .map(|&n| -> Result<MinNRow> {
            let started = Instant::now();
            let y = SetDescriptor::catalan(4, n)?;
            let mut dims = Vec::new();
            let (mut r, mut c) = (0, 0);
            for (pa, pb) in &reduced {
                let sys = OreSystem::build(pair_equation(pa, pb), &[y.clone(), y.clone()])?;
                r = sys.matrix().rows();
                c = sys.matrix().cols();
                dims.push(sys.nullity());
            }
            Ok(MinNRow {
                n,
                rows: r,
                cols: c,
                dims,
                runtime_ms: started.elapsed().as_millis() as u64,
            })
        })
        .collect::<Result<_>>()?;
    let first_n = rows
        .iter()
        .find(|r| r.dims.iter().all(|&d| d > 0))
        .map(|r| r.n);
    let disagreements = rows
        .iter()
        .filter(|r| r.dims.iter().any(|&d| d > 0) && r.dims.contains(&0))
        .map(|r| r.n)
        .collect();
    let solution = match first_n {
        Some(n) => {
            let y = SetDescriptor::catalan(4, n)?;
            let (pa, pb) = &reduced[0];
            let sys = OreSystem::build(pair_equation(pa, pb), &[y.clone(), y])?;
            sys.solutions(Some(1)).into_iter().next().map(|s| {
                let mut r = SolutionReport::new(
                    pair_equation(pa, pb),
                    s,
                    vec![format!("S:4:{n}"), format!("S:4:{n}")],
                    rows.iter().find(|r| r.n == n).map_or(0, |r| r.dims[0]),
                    "min-n",
                );
                r.seeds = vec![seeds[0]];
                r
            })
        }
        None => None,
    };
    Ok(MinNReport {
        seeds: seeds.to_vec(),
        fields,
        rows,
        first_n,
        disagreements,
        solution,
        budget_stop,
        caveat: "rank modulo p never exceeds the rank over Q, so a zero dimension is exact for \
                 the rational pair; a positive dimension can be an artifact of an unlucky prime"
            .into(),
    })
}

/// Random `a, b` supported on `S_{2,4}` with integer coefficients in
/// `[-1000, 1000]`.
pub fn random_s24_pair(seed: u64) -> Result<(Polynomial, Polynomial)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let s = SetDescriptor::catalan(2, 4)?.enumerate()?;
    let f = Field::Rational;
    let mut draw = || {
        Polynomial::from_terms(
            f,
            s.iter().map(|m| {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-1000..=1000);
                }
                (m.clone(), f.from_i64(c))
            }),
        )
    };
    let a = draw();
    let b = draw();
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_monomial;

    fn m(s: &str) -> Monomial {
        parse_monomial(s).unwrap()
    }

    #[test]
    fn trivial_ratio() {
        let y = SetDescriptor::catalan(3, 6).unwrap();
        let r = doubling_ratio(&"{1}".parse().unwrap(), &y, DEFAULT_PRODUCT_BUDGET).unwrap();
        assert_eq!((r.ratio_num, r.ratio_den), (1, 1));
    }

    #[test]
    fn x1_on_s34() {
        let r = xm_census(1, 4, DEFAULT_PRODUCT_BUDGET).unwrap();
        assert_eq!((r.y, r.sy), (3, 5));
        assert!(r.is_below_doubling());
        assert_eq!(r.closed_form, Some((5, 3)));
        assert_eq!(r.bound_holds, Some(true));
    }

    #[test]
    fn bitset_and_hashset_agree() {
        for (m, n) in [(1, 6), (2, 8), (3, 9)] {
            let s = xm_set(m).enumerate().unwrap();
            let y = SetDescriptor::catalan(m + 2, n).unwrap();
            let idx = product_index(&s, &y).unwrap().unwrap();
            assert_eq!(
                count_with_bitset(&s, &y, &idx).unwrap(),
                count_with_hashset(&s, &y).unwrap()
            );
        }
        let s24 = SetDescriptor::catalan(2, 4).unwrap().enumerate().unwrap();
        let y = donnelly_y(9).unwrap();
        let idx = product_index(&s24, &y).unwrap().unwrap();
        assert_eq!(
            count_with_bitset(&s24, &y, &idx).unwrap(),
            count_with_hashset(&s24, &y).unwrap()
        );
    }

    #[test]
    fn xm_threshold_values() {
        assert_eq!(xm_threshold(1), 4);
        assert_eq!(xm_threshold(2), 7);
        assert_eq!(xm_ratio(1, 4).unwrap(), BigRational::new(5.into(), 3.into()));
        assert!(xm_ratio(1, 2).is_err());
    }

    #[test]
    fn donnelly_small() {
        let y = donnelly_y(5).unwrap().enumerate().unwrap();
        assert_eq!(y, vec![m("x0"), m("x3")]);
        assert_eq!(donnelly_size(5).unwrap(), 2u32.into());
        assert_eq!(donnelly_y(6).unwrap().enumerate().unwrap().len(), 10);
        assert_eq!(donnelly_size(6).unwrap(), 10u32.into());
        assert!(donnelly_y(4).is_err());
    }

    #[test]
    fn top_cell_examples() {
        assert_eq!(top_cells(&m("x0*x2")), vec![0, 1]);
        assert!(!is_simple(&m("x0*x2")));
        assert!(is_simple(&m("x0*x1")));
        assert!(!is_simple(&Monomial::identity()));
        assert_eq!(top_cells(&m("x0*x1")), vec![0]);
        assert_eq!(top_cells(&m("x0*x3")), vec![0, 2]);
        assert_eq!(remove_top(&m("x0*x3"), 2), Some(m("x0")));
    }

    #[test]
    fn top_cells_match_brute_force() {
        for w in SetDescriptor::catalan(2, 7).unwrap().iter().unwrap() {
            let brute: Vec<u32> = (0..=w.max_index().unwrap())
                .filter(|&i| {
                    w.degree() >= 1
                        && crate::sets::all_monomials(w.degree() - 1, w.max_index().unwrap())
                            .iter()
                            .any(|c| Monomial::generator(i).multiply(c) == w)
                })
                .collect();
            assert_eq!(top_cells(&w), brute, "{w}");
        }
    }

    #[test]
    fn s24_formula_threshold() {
        let two = BigRational::from_integer(2.into());
        assert!(s24_cubic_ratio(45).unwrap() < two);
        assert!(s24_cubic_ratio(44).unwrap() >= two);
        assert_eq!(s24_threshold(5, 100).unwrap(), Some(45));
        for n in 10..=20 {
            assert_eq!(s24_cubic_ratio(n).unwrap(), s24_bound_ratio(n).unwrap());
        }
    }

    #[test]
    fn s24_census_small() {
        let c = s24_census(8, DEFAULT_PRODUCT_BUDGET).unwrap();
        assert_eq!(c.record.bound_holds, Some(true));
        assert!(c.deficit >= c.predicted_deficit);
    }

    #[test]
    fn csv_shape() {
        let r = xm_census(1, 4, DEFAULT_PRODUCT_BUDGET).unwrap();
        assert_eq!(to_csv(&[r]), "n,Y,SY,ratio_num,ratio_den,bound_holds\n4,3,5,5,3,true\n");
    }

    #[test]
    fn min_n_equal_pair() {
        let (a, _) = random_s24_pair(3).unwrap();
        let rep = minimal_support_search(&a, &a, &MinNConfig::new(5, 6, vec![1, 2])).unwrap();
        assert_eq!(rep.first_n, Some(5));
        assert!(rep.rows[0].dims.iter().all(|&d| d >= 4));
        assert!(rep.solution.as_ref().unwrap().verified);
    }

    #[test]
    fn min_n_generic_small() {
        let (a, b) = random_s24_pair(11).unwrap();
        let rep = minimal_support_search(&a, &b, &MinNConfig::new(5, 12, vec![1, 2, 3])).unwrap();
        assert!(rep.rows.iter().all(|r| r.dims.iter().all(|&d| d == 0)));
        assert_eq!(rep.rows.last().unwrap().n, 10);
        assert_eq!(rep.budget_stop, Some(11));
        assert_eq!(rep.first_n, None);
    }
}
