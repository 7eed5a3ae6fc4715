//! Finite monomial sets, chiefly the diagram sets `S_{k,n}`.
//!
//! `S_{k,n}` (positive diagrams with top label `x^k`, bottom label `x^n`) is the
//! set of normal forms `x_{i1}...x_{id}` with `d = n - k` and `i_j <= k + j - 2`
//! (1-based `j`). Its size is the Catalan triangle entry `b_{n,k}`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Indices, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetDescriptor {
    Explicit { elements: Vec<Monomial> },
    Catalan { k: u32, n: u32 },
    CatalanMinus { k: u32, n: u32, excluded: Vec<Monomial> },
}

impl SetDescriptor {
    pub fn catalan(k: u32, n: u32) -> Result<Self> {
        check_kn(k, n)?;
        Ok(SetDescriptor::Catalan { k, n })
    }

    pub fn explicit(elements: impl IntoIterator<Item = Monomial>) -> Self {
        SetDescriptor::Explicit {
            elements: elements.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SetDescriptor::Explicit { .. } => Ok(()),
            SetDescriptor::Catalan { k, n } | SetDescriptor::CatalanMinus { k, n, .. } => {
                check_kn(*k, *n)
            }
        }
    }

    pub fn contains(&self, w: &Monomial) -> bool {
        match self {
            SetDescriptor::Explicit { elements } => elements.contains(w),
            SetDescriptor::Catalan { k, n } => in_catalan_set(w, *k, *n),
            SetDescriptor::CatalanMinus { k, n, excluded } => {
                in_catalan_set(w, *k, *n) && !excluded.contains(w)
            }
        }
    }

    /// Streams the elements in lexicographic order (explicit sets are sorted
    /// and deduplicated first).
    pub fn iter(&self) -> Result<Box<dyn Iterator<Item = Monomial> + '_>> {
        self.validate()?;
        Ok(match self {
            SetDescriptor::Explicit { elements } => {
                let mut v = elements.clone();
                v.sort_by(|a, b| a.lex_cmp(b));
                v.dedup();
                Box::new(v.into_iter())
            }
            SetDescriptor::Catalan { k, n } => Box::new(CatalanIter::new(*k, *n)),
            SetDescriptor::CatalanMinus { k, n, excluded } => {
                let ex: HashSet<Monomial> = excluded.iter().cloned().collect();
                Box::new(CatalanIter::new(*k, *n).filter(move |w| !ex.contains(w)))
            }
        })
    }

    pub fn enumerate(&self) -> Result<Vec<Monomial>> {
        Ok(self.iter()?.collect())
    }

    /// Size without materializing when the descriptor allows it.
    pub fn len(&self) -> Result<BigUint> {
        match self {
            SetDescriptor::Catalan { k, n } => catalan_triangle(*n, *k),
            _ => Ok(BigUint::from(self.iter()?.count())),
        }
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.len()?.is_zero())
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDescriptor::Catalan { k, n } => write!(f, "S:{k}:{n}"),
            SetDescriptor::CatalanMinus { k, n, excluded } => {
                write!(f, "S:{k}:{n}-{{")?;
                write_list(f, excluded)?;
                f.write_str("}")
            }
            SetDescriptor::Explicit { elements } => {
                f.write_str("{")?;
                write_list(f, elements)?;
                f.write_str("}")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Monomial]) -> fmt::Result {
    for (i, w) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{w}")?;
    }
    Ok(())
}

/// Accepts `S:<k>:<n>`, optionally followed by `-{m1,m2,...}`, or an explicit
/// list `{m1,m2,...}` / `m1,m2,...` of monomials in the text grammar.
impl FromStr for SetDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("S:") {
            let (head, excluded) = match rest.find('-') {
                Some(p) => (&rest[..p], Some(&rest[p + 1..])),
                None => (rest, None),
            };
            let mut parts = head.split(':');
            let k = parse_u32(parts.next(), 2)?;
            let n = parse_u32(parts.next(), 2)?;
            if parts.next().is_some() {
                return Err(Error::parse(0, "expected S:<k>:<n>"));
            }
            check_kn(k, n)?;
            return Ok(match excluded {
                None => SetDescriptor::Catalan { k, n },
                Some(list) => SetDescriptor::CatalanMinus {
                    k,
                    n,
                    excluded: parse_monomial_list(list)?,
                },
            });
        }
        Ok(SetDescriptor::Explicit {
            elements: parse_monomial_list(s)?,
        })
    }
}

fn parse_u32(s: Option<&str>, pos: usize) -> Result<u32> {
    let s = s.ok_or_else(|| Error::parse(pos, "missing number"))?;
    s.trim()
        .parse()
        .map_err(|_| Error::parse(pos, format!("bad number {s:?}")))
}

fn parse_monomial_list(s: &str) -> Result<Vec<Monomial>> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| crate::parse::parse_monomial(t.trim()))
        .collect()
}

fn check_kn(k: u32, n: u32) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::param(format!("S_{{k,n}} requires 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok(())
}

/// Upper bound for the 0-based position `p` in `S_{k,n}`: `k + p - 1`.
fn position_bound(k: u32, p: usize) -> u32 {
    k + p as u32 - 1
}

pub fn in_catalan_set(w: &Monomial, k: u32, n: u32) -> bool {
    k >= 1
        && k <= n
        && w.degree() == (n - k) as usize
        && w
            .indices()
            .iter()
            .enumerate()
            .all(|(p, &i)| i <= position_bound(k, p))
}

/// Smallest `k >= 1` with `w` in `S_{k, k + deg w}`.
pub fn minimal_top(w: &Monomial) -> u32 {
    w.indices()
        .iter()
        .enumerate()
        .map(|(p, &i)| (i as i64 - p as i64 + 1).max(1) as u32)
        .max()
        .unwrap_or(1)
}

/// Lexicographic streaming enumerator of `S_{k,n}`.
pub struct CatalanIter {
    k: u32,
    cur: Indices,
    done: bool,
}

impl CatalanIter {
    pub fn new(k: u32, n: u32) -> Self {
        let d = n.saturating_sub(k) as usize;
        CatalanIter {
            k,
            cur: std::iter::repeat_n(0, d).collect(),
            done: k == 0 || k > n,
        }
    }
}

impl Iterator for CatalanIter {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        if self.done {
            return None;
        }
        let out = Monomial::from_normal_unchecked(self.cur.clone());
        // advance: bump the rightmost position that can still grow
        let d = self.cur.len();
        let mut p = d;
        loop {
            if p == 0 {
                self.done = true;
                break;
            }
            p -= 1;
            if self.cur[p] < position_bound(self.k, p) {
                self.cur[p] += 1;
                let v = self.cur[p];
                for q in p + 1..d {
                    self.cur[q] = v;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All normal forms of degree `degree` with every index at most `max_index`,
/// in lexicographic order.
pub fn all_monomials(degree: usize, max_index: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur: Indices = std::iter::repeat_n(0, degree).collect();
    loop {
        out.push(Monomial::from_normal_unchecked(cur.clone()));
        let Some(p) = (0..degree).rev().find(|&p| cur[p] < max_index) else {
            return out;
        };
        let v = cur[p] + 1;
        for q in p..degree {
            cur[q] = v;
        }
    }
}

/// Perfect ranking of `S_{k,n}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct CatalanIndex {
    k: u32,
    n: u32,
    /// `completions[p][v]`: number of valid suffixes for positions `p..d`
    /// whose first value is at least `v`.
    completions: Vec<Vec<u64>>,
}

impl CatalanIndex {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        check_kn(k, n)?;
        let d = (n - k) as usize;
        let width = n as usize + 1;
        let mut completions = vec![vec![0u64; width + 1]; d + 1];
        completions[d].iter_mut().for_each(|c| *c = 1);
        for p in (0..d).rev() {
            let ub = position_bound(k, p) as usize;
            for v in (0..=width).rev() {
                completions[p][v] = if v > ub {
                    0
                } else {
                    completions[p][v + 1]
                        .checked_add(completions[p + 1][v])
                        .ok_or_else(|| Error::param("S_{k,n} too large to index"))?
                };
            }
        }
        Ok(CatalanIndex { k, n, completions })
    }

    pub fn len(&self) -> u64 {
        self.completions[0][0]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self, w: &Monomial) -> Option<u64> {
        if !in_catalan_set(w, self.k, self.n) {
            return None;
        }
        let mut r = 0u64;
        let mut lo = 0usize;
        for (p, &i) in w.indices().iter().enumerate() {
            let i = i as usize;
            // suffixes starting at p with first value in [lo, i)
            r += self.completions[p][lo] - self.completions[p][i];
            lo = i;
        }
        Some(r)
    }
}

/// Catalan triangle `b_{n,k} = k (2n-k-1)! / (n! (n-k)!)`, the size of `S_{k,n}`.
pub fn catalan_triangle(n: u32, k: u32) -> Result<BigUint> {
    check_kn(k, n)?;
    // b_{n,k} = k / (2n - k) * C(2n - k, n)
    let top = 2 * n - k;
    let c = binomial(top, n);
    Ok(c * BigUint::from(k) / BigUint::from(top))
}

pub fn catalan(j: u32) -> BigUint {
    binomial(2 * j, j) / BigUint::from(j + 1)
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn catalan_triangle_u64(n: u32, k: u32) -> Result<u64> {
    catalan_triangle(n, k)?
        .to_u64()
        .ok_or_else(|| Error::param("count exceeds u64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial::from_normal(v).unwrap()
    }

    /// Direct evaluation of the factorial formula.
    fn b_factorial(n: u32, k: u32) -> BigUint {
        let fact = |x: u32| (1..=x).fold(BigUint::one(), |a, i| a * BigUint::from(i));
        BigUint::from(k) * fact(2 * n - k - 1) / (fact(n) * fact(n - k))
    }

    #[test]
    fn s24() {
        let s = SetDescriptor::catalan(2, 4).unwrap().enumerate().unwrap();
        assert_eq!(
            s,
            vec![m(&[0, 0]), m(&[0, 1]), m(&[0, 2]), m(&[1, 1]), m(&[1, 2])]
        );
        assert!(!s.contains(&m(&[2, 2])));
    }

    #[test]
    fn sets_kk_are_identity() {
        for k in 1..6 {
            let s = SetDescriptor::catalan(k, k).unwrap().enumerate().unwrap();
            assert_eq!(s, vec![Monomial::identity()]);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(SetDescriptor::catalan(4, 10).unwrap().iter().unwrap().count(), 2002);
        assert_eq!(catalan_triangle(10, 4).unwrap(), BigUint::from(2002u32));
        assert_eq!(catalan_triangle(4, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(catalan(2), BigUint::from(2u32));
        for n in 1..=14 {
            assert_eq!(catalan_triangle(n, n).unwrap(), BigUint::one());
            assert_eq!(catalan_triangle(n, 1).unwrap(), catalan(n - 1));
            for k in 1..=n {
                assert_eq!(catalan_triangle(n, k).unwrap(), b_factorial(n, k));
            }
        }
        assert!(catalan_triangle(3, 4).is_err());
        assert!(SetDescriptor::catalan(5, 4).is_err());
    }

    #[test]
    fn enumeration_is_sorted_unique_members() {
        for n in 1..=9 {
            for k in 1..=n {
                let v = SetDescriptor::catalan(k, n).unwrap().enumerate().unwrap();
                assert!(v.windows(2).all(|w| w[0].lex_cmp(&w[1]).is_lt()));
                assert!(v.iter().all(|w| in_catalan_set(w, k, n)));
            }
        }
    }

    #[test]
    fn ranking_is_enumeration_position() {
        for (k, n) in [(1, 1), (2, 4), (4, 10), (3, 9), (6, 8)] {
            let idx = CatalanIndex::new(k, n).unwrap();
            let all = SetDescriptor::catalan(k, n).unwrap().enumerate().unwrap();
            assert_eq!(idx.len(), all.len() as u64);
            for (r, w) in all.iter().enumerate() {
                assert_eq!(idx.rank(w), Some(r as u64));
            }
            if n > k {
                assert_eq!(idx.rank(&Monomial::power(n + 3, (n - k) as usize)), None);
            }
        }
    }

    #[test]
    fn minimal_top_membership() {
        for w in SetDescriptor::catalan(3, 7).unwrap().enumerate().unwrap() {
            let t = minimal_top(&w);
            assert!(t <= 3);
            assert!(in_catalan_set(&w, t, t + w.degree() as u32));
            if t > 1 {
                assert!(!in_catalan_set(&w, t - 1, t - 1 + w.degree() as u32));
            }
        }
    }

    #[test]
    fn descriptor_text() {
        let d: SetDescriptor = "S:4:10".parse().unwrap();
        assert_eq!(d, SetDescriptor::Catalan { k: 4, n: 10 });
        let d: SetDescriptor = "S:4:5-{x1,x2}".parse().unwrap();
        assert_eq!(d.enumerate().unwrap(), vec![m(&[0]), m(&[3])]);
        assert_eq!(d.to_string().parse::<SetDescriptor>().unwrap(), d);
        let d: SetDescriptor = "{x0^2, x1*x0}".parse().unwrap();
        assert_eq!(d.enumerate().unwrap(), vec![m(&[0, 0]), m(&[0, 2])]);
        assert!("S:5:4".parse::<SetDescriptor>().is_err());
    }
}
