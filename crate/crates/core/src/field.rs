//! Exact coefficient fields: the rationals, prime fields, and a field of
//! indeterminate coefficients realized by seeded evaluation into a large
//! prime field.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Modulus used to evaluate indeterminate coefficients: the Mersenne prime 2^61 - 1.
pub const GENERIC_PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Field {
    Rational,
    Prime(u64),
    /// Rational functions in named indeterminates, evaluated at seeded random
    /// points of `GF(GENERIC_PRIME)`.
    Indeterminate { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::param(format!("{p} is not prime")));
        }
        if p >= 1 << 63 {
            return Err(Error::param("prime must be below 2^63"));
        }
        Ok(Field::Prime(p))
    }

    /// Random prime in `[2^30, 2^31)` derived from `seed`.
    pub fn random_prime(seed: u64) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Field::Prime(random_prime_in(&mut rng, 1 << 30, 1 << 31))
    }

    pub fn modulus(&self) -> Option<u64> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
            Field::Indeterminate { .. } => Some(GENERIC_PRIME),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Field::Rational)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            _ => Scalar::Modular(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.modulus() {
            None => Scalar::Rational(BigRational::from_integer(v.into())),
            Some(p) => Scalar::Modular(v.rem_euclid(p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.modulus() {
            None => Scalar::Rational(BigRational::from_integer(v.clone())),
            Some(p) => Scalar::Modular(bigint_mod(v, p)),
        }
    }

    /// Maps a rational number into the field; `None` if the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Option<Scalar> {
        match self.modulus() {
            None => Some(Scalar::Rational(q.clone())),
            Some(p) => {
                let num = bigint_mod(q.numer(), p);
                let den = bigint_mod(q.denom(), p);
                inv_mod(den, p).map(|d| Scalar::Modular(mul_mod(num, d, p)))
            }
        }
    }

    /// Value of the named indeterminate under this field's evaluation seed.
    pub fn indeterminate(&self, name: &str) -> Result<Scalar> {
        match *self {
            Field::Indeterminate { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(name.as_bytes()));
                Ok(Scalar::Modular(rng.gen_range(1..GENERIC_PRIME)))
            }
            _ => Err(Error::param(format!(
                "indeterminate {name:?} requires a generic field, not {self}"
            ))),
        }
    }

    pub fn random(&self, rng: &mut impl Rng) -> Scalar {
        match self.modulus() {
            Some(p) => Scalar::Modular(rng.gen_range(0..p)),
            None => {
                let num: i64 = rng.gen_range(-1000..=1000);
                let den: i64 = rng.gen_range(1..=50);
                Scalar::Rational(BigRational::new(num.into(), den.into()))
            }
        }
    }

    pub fn random_nonzero(&self, rng: &mut impl Rng) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(add_mod(*x, *y, self.expect_modulus()))
            }
            _ => panic!("scalar kinds do not match"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Modular(x) => {
                let p = self.expect_modulus();
                Scalar::Modular(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(mul_mod(*x, *y, self.expect_modulus()))
            }
            _ => panic!("scalar kinds do not match"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Rational(x) if x.is_zero() => None,
            Scalar::Rational(x) => Some(Scalar::Rational(x.recip())),
            Scalar::Modular(x) => inv_mod(*x, self.expect_modulus()).map(Scalar::Modular),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Checks that a scalar belongs to this field's representation.
    pub fn owns(&self, a: &Scalar) -> bool {
        match (self.modulus(), a) {
            (None, Scalar::Rational(_)) => true,
            (Some(p), Scalar::Modular(v)) => *v < p,
            _ => false,
        }
    }

    fn expect_modulus(&self) -> u64 {
        self.modulus().expect("modular scalar in the rational field")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::Indeterminate { seed } => write!(f, "generic:{seed}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::parse(3, format!("bad prime {p:?}")))?;
            return Field::prime(p);
        }
        if let Some(seed) = s.strip_prefix("generic:") {
            let seed: u64 = seed
                .parse()
                .map_err(|_| Error::parse(8, format!("bad seed {seed:?}")))?;
            return Ok(Field::Indeterminate { seed });
        }
        Err(Error::parse(
            0,
            format!("unknown field {s:?}; expected q, fp:<p> or generic:<seed>"),
        ))
    }
}

impl TryFrom<String> for Field {
    type Error = Error;
    fn try_from(s: String) -> Result<Field> {
        s.parse()
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Modular(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Modular(x) => *x == 1,
        }
    }

    /// True for rationals with a leading minus sign; never for residues.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(x) if x.is_negative())
    }

    pub fn as_modular(&self) -> Option<u64> {
        match self {
            Scalar::Modular(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Modular(v) => write!(f, "{v}"),
        }
    }
}

/// Outcome of checking an identity under several independent evaluations of
/// the indeterminates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub seeds: Vec<u64>,
    pub agreed: Vec<bool>,
    /// Upper bound on the probability that a false identity agrees under
    /// every seed, `(degree_bound / p)^k`.
    pub failure_bound: f64,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.agreed.iter().all(|&a| a)
    }
}

/// Evaluates `check` under `k` indeterminate fields seeded from `base_seed`.
/// `degree_bound` bounds the total degree in the indeterminates of the
/// (denominator-cleared) identity being certified.
pub fn certify<F>(base_seed: u64, k: usize, degree_bound: u64, mut check: F) -> Certificate
where
    F: FnMut(Field) -> bool,
{
    let seeds: Vec<u64> = (0..k as u64)
        .map(|i| base_seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i))
        .collect();
    let agreed = seeds
        .iter()
        .map(|&seed| check(Field::Indeterminate { seed }))
        .collect();
    let per = degree_bound as f64 / GENERIC_PRIME as f64;
    Certificate {
        seeds,
        agreed,
        failure_bound: per.powi(k as i32),
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn random_prime_in(rng: &mut impl Rng, lo: u64, hi: u64) -> u64 {
    loop {
        let c = rng.gen_range(lo..hi) | 1;
        if c < hi && is_prime(c) {
            return c;
        }
    }
}

/// Sign-aware conversion used by the parser for integer literals.
pub(crate) fn rational_from_parts(num: BigInt, den: BigInt) -> Option<BigRational> {
    if den.sign() == Sign::NoSign {
        None
    } else {
        Some(BigRational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(GENERIC_PRIME));
        assert!(!is_prime(1 << 31));
        assert!(!is_prime(561));
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        if let Field::Prime(p) = Field::random_prime(7) {
            assert!(is_prime(p) && p >= 1 << 30);
        } else {
            unreachable!()
        }
    }

    #[test]
    fn arithmetic() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), Scalar::Modular(6));
        assert_eq!(f.inv(&Scalar::Modular(3)), Some(Scalar::Modular(5)));
        assert_eq!(f.inv(&Scalar::Modular(0)), None);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half), Some(Scalar::Modular(4)));
        assert_eq!(Field::Prime(2).from_rational(&half), None);
        let q = Field::Rational;
        let a = q.from_rational(&half).unwrap();
        assert_eq!(q.add(&a, &a), q.one());
        assert_eq!(a.to_string(), "1/2");
    }

    #[test]
    fn field_text() {
        for s in ["q", "fp:1000003", "generic:42"] {
            assert_eq!(s.parse::<Field>().unwrap().to_string(), s);
        }
        assert!("fp:15".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    fn indeterminates_depend_on_seed_and_name() {
        let f1 = Field::Indeterminate { seed: 1 };
        let f2 = Field::Indeterminate { seed: 2 };
        assert_eq!(f1.indeterminate("a0").unwrap(), f1.indeterminate("a0").unwrap());
        assert_ne!(f1.indeterminate("a0").unwrap(), f1.indeterminate("a1").unwrap());
        assert_ne!(f1.indeterminate("a0").unwrap(), f2.indeterminate("a0").unwrap());
        assert!(Field::Rational.indeterminate("a0").is_err());
    }

    #[test]
    fn certification_reports_bound() {
        let c = certify(5, 3, 10, |f| {
            let a = f.indeterminate("a").unwrap();
            let b = f.indeterminate("b").unwrap();
            // (a+b)^2 == a^2 + 2ab + b^2
            let s = f.add(&a, &b);
            let lhs = f.mul(&s, &s);
            let rhs = f.add(&f.add(&f.mul(&a, &a), &f.mul(&f.from_i64(2), &f.mul(&a, &b))), &f.mul(&b, &b));
            lhs == rhs
        });
        assert!(c.holds());
        assert_eq!(c.seeds.len(), 3);
        assert!(c.failure_bound < 1e-50);
        let c = certify(5, 3, 2, |f| {
            let a = f.indeterminate("a").unwrap();
            f.mul(&a, &a) == a
        });
        assert!(!c.holds());
    }
}
