//! Sparse elements of the monoid ring `K[M]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::SparseMatrix;
use crate::monomial::Monomial;
use crate::sets::{all_monomials, SetDescriptor};

/// A finite linear combination of monomials with nonzero coefficients, kept
/// in degree-lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::term(field, Monomial::identity(), field.one())
    }

    pub fn constant(field: Field, c: Scalar) -> Self {
        Self::term(field, Monomial::identity(), c)
    }

    pub fn monomial(field: Field, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    pub fn generator(field: Field, i: u32) -> Self {
        Self::monomial(field, Monomial::generator(i))
    }

    pub fn term(field: Field, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, c);
        p
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `sum c_i x_i` for a coefficient list `c_0, c_1, ...`.
    pub fn linear(field: Field, coeffs: &[Scalar]) -> Self {
        Self::from_terms(
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::generator(i as u32), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert!(self.field.owns(&c), "coefficient {c} is not in {}", self.field);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Highest term degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    pub fn min_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::min_index).min()
    }

    /// Homogeneous components by strictly increasing degree.
    pub fn homogeneous_components(&self) -> Vec<(usize, Polynomial)> {
        let mut out: Vec<(usize, Polynomial)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree();
            match out.last_mut() {
                Some((last, p)) if *last == d => {
                    p.terms.insert(m.clone(), c.clone());
                }
                _ => out.push((d, Polynomial::term(self.field, m.clone(), c.clone()))),
            }
        }
        out
    }

    pub fn component(&self, degree: usize) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest minus lowest degree.
    pub fn width(&self) -> Result<usize> {
        match (self.degree(), self.min_degree()) {
            (Some(hi), Some(lo)) => Ok(hi - lo),
            _ => Err(Error::ZeroWidth),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), self.field.mul(v, c)))
                .collect(),
        }
    }

    fn check_field(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        let f = self.field;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.multiply(m2);
                let c = f.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Polynomial {
            field: f,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn try_eq(&self, other: &Polynomial) -> Result<bool> {
        self.check_field(other)?;
        Ok(self.terms == other.terms)
    }

    /// Shift endomorphism applied `k` times: every `x_i` becomes `x_{i+k}`.
    pub fn shift(&self, k: u32) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shift(k), c.clone()))
                .collect(),
        }
    }

    /// Inverse shift; `None` unless every index is at least `k`.
    pub fn unshift(&self, k: u32) -> Option<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| m.unshift(k).map(|m| (m, c.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(Polynomial {
            field: self.field,
            terms,
        })
    }

    /// Maps every coefficient through `f`, dropping terms that vanish.
    pub fn map_coefficients(&self, field: Field, f: impl Fn(&Scalar) -> Scalar) -> Polynomial {
        Polynomial::from_terms(field, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Reduces a rational polynomial into another field; `None` if some
    /// denominator vanishes there.
    pub fn to_field(&self, field: Field) -> Option<Polynomial> {
        if field == self.field {
            return Some(self.clone());
        }
        let mut out = Polynomial::zero(field);
        for (m, c) in &self.terms {
            let v = match c {
                Scalar::Rational(q) => field.from_rational(q)?,
                Scalar::Modular(v) if field.modulus() == self.field.modulus() => Scalar::Modular(*v),
                Scalar::Modular(_) => return None,
            };
            out.add_term(m.clone(), v);
        }
        Some(out)
    }

    /// Random polynomial on `support` with uniformly drawn coefficients.
    pub fn random(field: Field, support: &SetDescriptor, seed: u64) -> Result<Polynomial> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Polynomial::zero(field);
        for m in support.iter()? {
            let c = field.random(&mut rng);
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Like [`Polynomial::random`] but every support monomial gets a nonzero
    /// coefficient.
    pub fn random_full(field: Field, support: &SetDescriptor, seed: u64) -> Result<Polynomial> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Polynomial::zero(field);
        for m in support.iter()? {
            let c = field.random_nonzero(&mut rng);
            p.add_term(m, c);
        }
        Ok(p)
    }
}

/// Finds `q` with `a * q = p`, searching `q` among monomials of degree
/// `deg(p_d) - deg(a)` (for each component degree `d` of `p`) whose indices
/// do not exceed the largest index of `p`. `a` must be homogeneous and nonzero.
pub fn left_divide(a: &Polynomial, p: &Polynomial) -> Result<Option<Polynomial>> {
    a.check_field(p)?;
    if a.is_zero() {
        return Err(Error::ZeroInput("divisor"));
    }
    if !a.is_homogeneous() {
        return Err(Error::param("left division requires a homogeneous divisor"));
    }
    let field = a.field;
    if p.is_zero() {
        return Ok(Some(Polynomial::zero(field)));
    }
    let da = a.degree().unwrap();
    let max_idx = p.max_index().unwrap_or(0);
    let mut candidates = Vec::new();
    for (d, _) in p.homogeneous_components() {
        if d < da {
            return Ok(None);
        }
        candidates.extend(all_monomials(d - da, max_idx));
    }
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    let mut entries = Vec::new();
    for (j, c) in candidates.iter().enumerate() {
        for (m, v) in &a.terms {
            let w = m.multiply(c);
            let n = rows.len();
            let r = *rows.entry(w).or_insert(n);
            entries.push((r, j, v.clone()));
        }
    }
    for m in p.terms.keys() {
        let n = rows.len();
        rows.entry(m.clone()).or_insert(n);
    }
    let mut mat = SparseMatrix::new(rows.len(), candidates.len(), field);
    for (r, j, v) in &entries {
        mat.add_to(*r, *j, v);
    }
    let mut rhs = vec![field.zero(); rows.len()];
    for (m, c) in &p.terms {
        rhs[rows[m]] = c.clone();
    }
    Ok(mat.solve(&rhs).map(|x| {
        Polynomial::from_terms(field, candidates.into_iter().zip(x))
    }))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("field mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("field mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("field mismatch in polynomial product")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { self.field.neg(c) } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.field, self)
    }
}

/// JSON form: `{"field": "q", "terms": [{"coef": "3/4", "mono": [0, 0, 1]}]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    field: Field,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    mono: Monomial,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coef: c.to_string(),
                    mono: m.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        let mut p = Polynomial::zero(j.field);
        for t in j.terms {
            let c = crate::parse::parse_scalar(&t.coef, j.field).map_err(serde::de::Error::custom)?;
            p.add_term(t.mono, c);
        }
        Ok(p)
    }
}
