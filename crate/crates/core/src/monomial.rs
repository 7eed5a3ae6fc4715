//! Elements of the positive monoid `M = <x0, x1, ... | xj xi = xi x(j+1), i < j>`.
//!
//! Every element has a unique normal form `x_{i1} x_{i2} ... x_{ik}` with
//! `i1 <= i2 <= ... <= ik`; [`Monomial`] stores exactly that sequence, so equality
//! of monomials is equality of monoid elements.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Indices = SmallVec<[u32; 8]>;

/// A monoid element in normal form (weakly increasing generator indices).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Monomial(Indices);

impl Monomial {
    pub fn identity() -> Self {
        Monomial(Indices::new())
    }

    pub fn generator(i: u32) -> Self {
        Monomial(smallvec::smallvec![i])
    }

    /// Power of a single generator, `x_i^e`.
    pub fn power(i: u32, e: usize) -> Self {
        Monomial(std::iter::repeat_n(i, e).collect())
    }

    /// Builds a monomial from an already normal index sequence.
    pub fn from_normal(indices: &[u32]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::param(format!(
                "{indices:?} is not weakly increasing"
            )));
        }
        Ok(Monomial(indices.iter().copied().collect()))
    }

    pub(crate) fn from_normal_unchecked(indices: Indices) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] <= w[1]));
        Monomial(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn min_index(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// `self * x_i`. The new letter keeps index `i` and every letter it passes
    /// on its way left is raised by one.
    pub fn mul_generator_right(&self, i: u32) -> Monomial {
        let pos = self.0.partition_point(|&z| z <= i);
        let mut out = Indices::with_capacity(self.0.len() + 1);
        out.extend_from_slice(&self.0[..pos]);
        out.push(i);
        out.extend(self.0[pos..].iter().map(|&z| z + 1));
        Monomial(out)
    }

    /// `x_i * self`.
    pub fn mul_generator_left(&self, i: u32) -> Monomial {
        // x_{i+q} swaps past every z_q < i + q.
        let mut q = 0usize;
        while q < self.0.len() && (self.0[q] as u64) < i as u64 + q as u64 {
            q += 1;
        }
        let mut out = Indices::with_capacity(self.0.len() + 1);
        out.extend_from_slice(&self.0[..q]);
        out.push(i + q as u32);
        out.extend_from_slice(&self.0[q..]);
        Monomial(out)
    }

    pub fn multiply(&self, other: &Monomial) -> Monomial {
        other
            .0
            .iter()
            .fold(self.clone(), |acc, &i| acc.mul_generator_right(i))
    }

    /// Applies the shift endomorphism `x_i -> x_{i+k}`.
    pub fn shift(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|&i| i + k).collect())
    }

    /// Inverse of [`Monomial::shift`]; `None` if some index is below `k`.
    pub fn unshift(&self, k: u32) -> Option<Monomial> {
        if self.min_index().is_some_and(|m| m < k) {
            return None;
        }
        Some(Monomial(self.0.iter().map(|&i| i - k).collect()))
    }

    /// Returns `c` with `x_i * c = self`, if `x_i` left-divides `self`.
    pub fn left_divide_generator(&self, i: u32) -> Option<Monomial> {
        for (q, &z) in self.0.iter().enumerate() {
            let target = i as u64 + q as u64;
            match (z as u64).cmp(&target) {
                Ordering::Less => continue,
                Ordering::Equal => {
                    let mut out = self.0.clone();
                    out.remove(q);
                    return Some(Monomial(out));
                }
                Ordering::Greater => return None,
            }
        }
        None
    }

    pub fn is_left_divisible_by_generator(&self, i: u32) -> bool {
        self.left_divide_generator(i).is_some()
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// Degree first, then lexicographic on indices.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Monomial {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Monomial::from_normal(&v)
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.0.into_vec()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.0.len() {
            let i = self.0[k];
            let run = self.0[k..].iter().take_while(|&&z| z == i).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal form of an arbitrary word in the generators.
pub fn normalize(word: &[u32]) -> Monomial {
    word.iter()
        .fold(Monomial::identity(), |acc, &i| acc.mul_generator_right(i))
}

pub fn multiply(a: &Monomial, b: &Monomial) -> Monomial {
    a.multiply(b)
}

pub fn shift(w: &Monomial, k: u32) -> Monomial {
    w.shift(k)
}

/// The unique `c` with `a * c = b`, if any.
pub fn left_quotient(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if a.degree() > b.degree() {
        return None;
    }
    a.indices()
        .iter()
        .try_fold(b.clone(), |rest, &i| rest.left_divide_generator(i))
}

/// Rewriting-order strategies for [`normalize_by_rewriting`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    RightmostFirst,
    LeftmostFirst,
    Random(u64),
}

/// Normalizes by literally applying `x_j x_i -> x_i x_{j+1}` (`j > i`) to
/// adjacent inversions until none remain. Slow; kept for checking confluence
/// against [`normalize`].
pub fn normalize_by_rewriting(word: &[u32], strategy: RewriteStrategy) -> Monomial {
    let mut w: Vec<u32> = word.to_vec();
    let mut rng = match strategy {
        RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut inversions = Vec::new();
    loop {
        inversions.clear();
        inversions.extend((0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]));
        if inversions.is_empty() {
            break;
        }
        let p = match strategy {
            RewriteStrategy::RightmostFirst => *inversions.last().unwrap(),
            RewriteStrategy::LeftmostFirst => inversions[0],
            RewriteStrategy::Random(_) => {
                let rng = rng.as_mut().unwrap();
                inversions[rng.gen_range(0..inversions.len())]
            }
        };
        let (j, i) = (w[p], w[p + 1]);
        w[p] = i;
        w[p + 1] = j + 1;
    }
    Monomial(w.into_iter().collect())
}

/// Letter complement: returns `(s\t, t\s)` so that `s·(s\t) = t·(t\s)` is the
/// least common right multiple of the two letters (`None` is the empty word).
fn letter_complement(s: u32, t: u32) -> (Option<u32>, Option<u32>) {
    match s.cmp(&t) {
        Ordering::Equal => (None, None),
        // x_t x_s = x_s x_{t+1}
        Ordering::Less => (Some(t + 1), Some(s)),
        Ordering::Greater => (Some(t), Some(s + 1)),
    }
}

/// Reverses a single letter (or the empty word) against a word: `(s\v, v\s)`.
fn reverse_letter(s: Option<u32>, v: &[u32]) -> (Vec<u32>, Option<u32>) {
    let mut out = Vec::with_capacity(v.len());
    let mut cur = s;
    for (k, &y) in v.iter().enumerate() {
        match cur {
            None => {
                out.extend_from_slice(&v[k..]);
                return (out, None);
            }
            Some(x) => {
                let (x_y, y_x) = letter_complement(x, y);
                out.extend(x_y);
                cur = y_x;
            }
        }
    }
    (out, cur)
}

/// Word reversing: `(u\v, v\u)` with `u·(u\v) = v·(v\u)` the right lcm.
fn reverse_words(u: &[u32], v: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut v_cur = v.to_vec();
    let mut v_under_u = Vec::with_capacity(u.len());
    // v\u is assembled letter by letter: v\(s·rest) = (v\s)·((s\v)\rest).
    for &s in u {
        let (s_v, v_s) = reverse_letter(Some(s), &v_cur);
        v_under_u.extend(v_s);
        v_cur = s_v;
    }
    (v_cur, v_under_u)
}

/// Least common right multiple of two monomials.
///
/// Computed by word reversing; every letter pair complements to single
/// letters, so the result never exceeds degree `deg a + deg b`. `max_degree`
/// bounds the accepted result degree (default `deg a + deg b + 4`).
pub fn right_lcm(a: &Monomial, b: &Monomial, max_degree: Option<usize>) -> Result<Monomial> {
    let budget = max_degree.unwrap_or(a.degree() + b.degree() + 4);
    let (a_under_b, b_under_a) = reverse_words(a.indices(), b.indices());
    let via_a = a.multiply(&normalize(&a_under_b));
    debug_assert_eq!(via_a, b.multiply(&normalize(&b_under_a)));
    if via_a.degree() > budget {
        return Err(Error::BudgetExhausted(format!(
            "right lcm of {a} and {b} has degree {} > {budget}",
            via_a.degree()
        )));
    }
    Ok(via_a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial::from_normal(v).unwrap()
    }

    /// Breadth-first oracle: smallest-degree common right multiple among
    /// products `a*c` with `c` of bounded index.
    fn lcm_by_search(a: &Monomial, b: &Monomial, max_deg: usize, max_idx: u32) -> Option<Monomial> {
        let start = a.degree().max(b.degree());
        for d in start..=max_deg {
            let extra = d - a.degree();
            let mut best: Option<Monomial> = None;
            for c in all_monomials(extra, max_idx) {
                let prod = a.multiply(&c);
                if left_quotient(b, &prod).is_some() && best.as_ref().is_none_or(|x| prod < *x) {
                    best = Some(prod);
                }
            }
            if best.is_some() {
                return best;
            }
        }
        None
    }

    fn all_monomials(deg: usize, max_idx: u32) -> Vec<Monomial> {
        let mut out = vec![Indices::new()];
        for _ in 0..deg {
            out = out
                .into_iter()
                .flat_map(|w| {
                    let lo = w.last().copied().unwrap_or(0);
                    (lo..=max_idx).map(move |i| {
                        let mut n = w.clone();
                        n.push(i);
                        n
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial).collect()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[1, 0]), m(&[0, 2]));
        assert_eq!(normalize(&[0, 1, 5]), m(&[0, 1, 5]));
        assert_eq!(normalize(&[3, 1, 0]), m(&[0, 2, 5]));
        for s in [
            RewriteStrategy::RightmostFirst,
            RewriteStrategy::LeftmostFirst,
        ] {
            assert_eq!(normalize_by_rewriting(&[3, 1, 0], s), m(&[0, 2, 5]));
        }
    }

    #[test]
    fn multiply_examples() {
        let x = Monomial::generator;
        assert_eq!(x(0).multiply(&x(0)), m(&[0, 0]));
        assert_eq!(x(1).multiply(&x(0)), m(&[0, 2]));
        assert_eq!(m(&[0, 2]).multiply(&m(&[1, 1])), m(&[0, 1, 1, 4]));
        assert_eq!(
            m(&[0, 2]).multiply(&m(&[1, 1])),
            normalize_by_rewriting(&[0, 2, 1, 1], RewriteStrategy::RightmostFirst)
        );
    }

    #[test]
    fn generator_left_multiplication_agrees() {
        for w in all_monomials(3, 4) {
            for i in 0..6 {
                let mut word = vec![i];
                word.extend_from_slice(w.indices());
                assert_eq!(w.mul_generator_left(i), normalize(&word));
            }
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(m(&[0, 2]).shift(1), m(&[1, 3]));
        assert_eq!(Monomial::identity().shift(2), Monomial::identity());
        let w = m(&[2, 3]);
        let x0 = Monomial::generator(0);
        assert_eq!(w.multiply(&x0), x0.multiply(&w.shift(1)));
    }

    #[test]
    fn left_quotient_examples() {
        let x = Monomial::generator;
        assert_eq!(left_quotient(&x(0), &m(&[0, 2])), Some(x(2)));
        assert_eq!(left_quotient(&x(1), &m(&[0, 2])), Some(x(0)));
        assert_eq!(left_quotient(&x(0), &m(&[1, 2])), None);
        // brute force: no degree-1 c with index <= 2 satisfies x0*c = x1x2
        assert!((0..=2).all(|i| x(0).multiply(&x(i)) != m(&[1, 2])));
    }

    #[test]
    fn left_quotient_matches_brute_force() {
        for b in all_monomials(3, 4) {
            for a in all_monomials(1, 4).into_iter().chain(all_monomials(2, 3)) {
                let max = b.max_index().unwrap();
                let brute = all_monomials(b.degree() - a.degree(), max)
                    .into_iter()
                    .find(|c| a.multiply(c) == b);
                assert_eq!(left_quotient(&a, &b), brute, "{a} \\ {b}");
            }
        }
    }

    #[test]
    fn lcm_examples() {
        let x = Monomial::generator;
        assert_eq!(right_lcm(&x(0), &x(0), None).unwrap(), x(0));
        assert_eq!(right_lcm(&x(0), &x(1), None).unwrap(), m(&[0, 2]));
        assert_eq!(right_lcm(&x(0), &m(&[0, 1]), None).unwrap(), m(&[0, 1]));
        assert!(matches!(
            right_lcm(&m(&[0, 0]), &m(&[1, 1]), Some(2)),
            Err(Error::BudgetExhausted(_))
        ));
    }

    #[test]
    fn lcm_matches_search_oracle() {
        let small: Vec<Monomial> = all_monomials(1, 3).into_iter().chain(all_monomials(2, 2)).collect();
        for a in &small {
            for b in &small {
                let l = right_lcm(a, b, None).unwrap();
                let oracle = lcm_by_search(a, b, a.degree() + b.degree(), 8).unwrap();
                assert_eq!(l, oracle, "lcm({a}, {b})");
                // every common multiple found at degree <= 4 is a right multiple of l
                for c in all_monomials(4 - a.degree(), 6) {
                    let p = a.multiply(&c);
                    if left_quotient(b, &p).is_some() {
                        assert!(left_quotient(&l, &p).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::identity().to_string(), "1");
        assert_eq!(m(&[0, 0, 1, 4]).to_string(), "x0^2*x1*x4");
    }
}
