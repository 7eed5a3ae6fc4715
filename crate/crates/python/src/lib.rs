//! Python bindings: monomials, polynomials, the pair solvers, the explicit
//! constructions and the census counts.

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use fmonoid_core::census::{self, CensusRecord};
use fmonoid_core::constructions::{self, QkReading};
use fmonoid_core::monomial::{self as mono, RewriteStrategy};
use fmonoid_core::ore::{self, ReduceBudget, SolutionReport};
use fmonoid_core::parse::{parse_monomial, parse_polynomial, parse_scalar};
use fmonoid_core::{Error, Field, Scalar, SetDescriptor};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExhausted(_) | Error::Degenerate(_) | Error::Division(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field(text: &str) -> PyResult<Field> {
    text.parse().map_err(py_err)
}

fn scalars(f: Field, items: &[String]) -> PyResult<Vec<Scalar>> {
    items.iter().map(|s| parse_scalar(s, f).map_err(py_err)).collect()
}

/// An element of the monoid in normal form.
#[pyclass(frozen, skip_from_py_object, eq, hash, ord, module = "fmonoid")]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Monomial(mono::Monomial);

#[pymethods]
impl Monomial {
    /// From text such as "x1*x0" or a list of generator indices.
    #[new]
    fn new(word: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = word.extract::<String>() {
            return parse_monomial(&text).map(Monomial).map_err(py_err);
        }
        let indices: Vec<u32> = word.extract()?;
        Ok(Monomial(mono::normalize(&indices)))
    }

    #[staticmethod]
    fn generator(i: u32) -> Self {
        Monomial(mono::Monomial::generator(i))
    }

    #[getter]
    fn indices(&self) -> Vec<u32> {
        self.0.indices().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn shift(&self, k: u32) -> Self {
        Monomial(self.0.shift(k))
    }

    /// Least common right multiple, or an error past `max_degree`.
    #[pyo3(signature = (other, max_degree=None))]
    fn lcm(&self, other: &Monomial, max_degree: Option<usize>) -> PyResult<Self> {
        mono::right_lcm(&self.0, &other.0, max_degree)
            .map(Monomial)
            .map_err(py_err)
    }

    /// `q` with `self * q == other`, if any.
    fn left_quotient(&self, other: &Monomial) -> Option<Self> {
        mono::left_quotient(&self.0, &other.0).map(Monomial)
    }

    fn __mul__(&self, other: &Monomial) -> Self {
        Monomial(self.0.multiply(&other.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Monomial('{}')", self.0)
    }
}

/// An element of `K[M]` over `q`, `fp:<p>` or `generic:<seed>`.
#[pyclass(frozen, skip_from_py_object, eq, module = "fmonoid")]
#[derive(Clone, PartialEq)]
struct Polynomial(fmonoid_core::Polynomial);

#[pymethods]
impl Polynomial {
    #[new]
    #[pyo3(signature = (text, field="q"))]
    fn new(text: &str, field: &str) -> PyResult<Self> {
        let f = self::field(field)?;
        parse_polynomial(text, f).map(Polynomial).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Polynomial)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    /// `(monomial, coefficient)` pairs with coefficients as strings.
    fn terms(&self) -> Vec<(Monomial, String)> {
        self.0
            .terms()
            .map(|(m, c)| (Monomial(m.clone()), c.to_string()))
            .collect()
    }

    fn coefficient(&self, m: &Monomial) -> String {
        self.0.coefficient(&m.0).to_string()
    }

    fn shift(&self, k: u32) -> Self {
        Polynomial(self.0.shift(k))
    }

    fn __add__(&self, other: &Polynomial) -> PyResult<Self> {
        self.0.try_add(&other.0).map(Polynomial).map_err(py_err)
    }

    fn __sub__(&self, other: &Polynomial) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(Polynomial).map_err(py_err)
    }

    fn __mul__(&self, other: &Polynomial) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(Polynomial).map_err(py_err)
    }

    fn __neg__(&self) -> Self {
        Polynomial(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}', field='{}')", self.0, self.0.field())
    }
}

/// Outcome of a solver: the unknowns and whether substitution checked out.
#[pyclass(frozen, module = "fmonoid")]
struct Solution(SolutionReport);

#[pymethods]
impl Solution {
    #[getter]
    fn unknowns(&self) -> Vec<Polynomial> {
        self.0.unknowns.iter().cloned().map(Polynomial).collect()
    }

    #[getter]
    fn verified(&self) -> bool {
        self.0.verified
    }

    #[getter]
    fn supports(&self) -> Vec<String> {
        self.0.supports.clone()
    }

    #[getter]
    fn basis_size(&self) -> usize {
        self.0.basis_size
    }

    /// Substitutes the unknowns again.
    fn recheck(&self) -> PyResult<bool> {
        self.0.recheck().map_err(py_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Solution)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        let u: Vec<String> = self.0.unknowns.iter().map(|p| p.to_string()).collect();
        format!("Solution(verified={}, unknowns={u:?})", self.0.verified)
    }
}

/// Normal form of a word given as generator indices.
#[pyfunction]
fn normalize(word: Vec<u32>) -> Monomial {
    Monomial(mono::normalize(&word))
}

/// Normal form by string rewriting: "rightmost", "leftmost" or "random:<seed>".
#[pyfunction]
fn normalize_by_rewriting(word: Vec<u32>, strategy: &str) -> PyResult<Monomial> {
    let s = match strategy {
        "rightmost" => RewriteStrategy::RightmostFirst,
        "leftmost" => RewriteStrategy::LeftmostFirst,
        other => match other.strip_prefix("random:").and_then(|t| t.parse().ok()) {
            Some(seed) => RewriteStrategy::Random(seed),
            None => return Err(PyValueError::new_err(format!("unknown strategy {other:?}"))),
        },
    };
    Ok(Monomial(mono::normalize_by_rewriting(&word, s)))
}

fn set(text: &str) -> PyResult<SetDescriptor> {
    text.parse().map_err(py_err)
}

/// Size of a set such as "S:4:10".
#[pyfunction]
fn count(set: &str) -> PyResult<BigUint> {
    self::set(set)?.len().map_err(py_err)
}

#[pyfunction]
fn enumerate(set: &str) -> PyResult<Vec<Monomial>> {
    Ok(self::set(set)?
        .enumerate()
        .map_err(py_err)?
        .into_iter()
        .map(Monomial)
        .collect())
}

/// Kernel basis of `a u = b v` with `u`, `v` supported on `support`.
#[pyfunction]
#[pyo3(signature = (a, b, support, limit=None))]
fn solve_pair(a: &Polynomial, b: &Polynomial, support: &str, limit: Option<usize>) -> PyResult<Vec<Solution>> {
    let s = set(support)?;
    Ok(ore::solve_pair_limited(&a.0, &b.0, &s, limit)
        .map_err(py_err)?
        .into_iter()
        .map(Solution)
        .collect())
}

/// Nonzero `(u, v)` with `a u = b v`; raises RuntimeError when over budget.
#[pyfunction]
#[pyo3(signature = (a, b, max_support=4000, max_degree=24, minimal=false))]
fn reduce(a: &Polynomial, b: &Polynomial, max_support: u64, max_degree: u32, minimal: bool) -> PyResult<Solution> {
    let budget = ReduceBudget {
        max_support,
        max_degree,
        minimal_components: minimal,
    };
    ore::ore_reduce(&a.0, &b.0, &budget).map(Solution).map_err(py_err)
}

/// Degree-m `(u, v)` for `a = sum alpha_i x_i`, `b = sum beta_i x_i`.
#[pyfunction]
#[pyo3(signature = (alpha, beta, field="q"))]
fn degree_one_solution(alpha: Vec<String>, beta: Vec<String>, field: &str) -> PyResult<(Polynomial, Polynomial)> {
    let f = self::field(field)?;
    let (u, v) = constructions::degree_one_solution(f, &scalars(f, &alpha)?, &scalars(f, &beta)?).map_err(py_err)?;
    Ok((Polynomial(u), Polynomial(v)))
}

/// `(a, b)` for `(x0 + alpha x2) u = (x1 + beta x2) v`.
#[pyfunction]
#[pyo3(signature = (alpha, beta, field="q"))]
fn basic_equation(alpha: &str, beta: &str, field: &str) -> PyResult<(Polynomial, Polynomial)> {
    let f = self::field(field)?;
    let s = scalars(f, &[alpha.to_string(), beta.to_string()])?;
    let (a, b) = constructions::basic_equation(f, &s[0], &s[1]);
    Ok((Polynomial(a), Polynomial(b)))
}

/// The degree-2 solution of the basic equation; `normalized` divides by beta.
#[pyfunction]
#[pyo3(signature = (alpha, beta, field="q", normalized=false))]
fn basic_solution(alpha: &str, beta: &str, field: &str, normalized: bool) -> PyResult<(Polynomial, Polynomial)> {
    let f = self::field(field)?;
    let s = scalars(f, &[alpha.to_string(), beta.to_string()])?;
    let (u, v) = if normalized {
        constructions::normalized_basic_solution(f, &s[0], &s[1])
    } else {
        constructions::basic_solution(f, &s[0], &s[1])
    }
    .map_err(py_err)?;
    Ok((Polynomial(u), Polynomial(v)))
}

/// `u_i` with every `(alpha_i x0 + beta_i x1) u_i` equal to the common product.
#[pyfunction]
#[pyo3(signature = (pairs, field="q"))]
fn qk_solution(pairs: Vec<(String, String)>, field: &str) -> PyResult<(Vec<Polynomial>, Polynomial)> {
    let f = self::field(field)?;
    let pairs = pairs
        .iter()
        .map(|(a, b)| Ok((parse_scalar(a, f).map_err(py_err)?, parse_scalar(b, f).map_err(py_err)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let us = constructions::qk_system_solution(f, &pairs, QkReading::Diagonal).map_err(py_err)?;
    let p = constructions::qk_product(f, &pairs, QkReading::Diagonal);
    Ok((us.into_iter().map(Polynomial).collect(), Polynomial(p)))
}

fn record(r: CensusRecord) -> (u64, u64, u64, u64) {
    (r.y, r.sy, r.ratio_num, r.ratio_den)
}

/// `(|Y|, |X_m Y|, ratio numerator, ratio denominator)` for `Y = S_{m+2,n}`.
#[pyfunction]
fn xm_census(m: u32, n: u32) -> PyResult<(u64, u64, u64, u64)> {
    census::xm_census(m, n, census::DEFAULT_PRODUCT_BUDGET)
        .map(record)
        .map_err(py_err)
}

/// Closed-form ratio `|X_m S_{m+2,n}| / |S_{m+2,n}|` as `(num, den)`.
#[pyfunction]
fn xm_ratio(m: u32, n: u32) -> PyResult<(BigInt, BigInt)> {
    let q = census::xm_ratio(m, n).map_err(py_err)?;
    Ok((q.numer().clone(), q.denom().clone()))
}

/// `(|Y|, |S_{2,4} Y|, ratio numerator, ratio denominator)` for the Donnelly set.
#[pyfunction]
fn s24_census(n: u32) -> PyResult<(u64, u64, u64, u64)> {
    census::s24_census(n, census::DEFAULT_PRODUCT_BUDGET)
        .map(|c| record(c.record))
        .map_err(py_err)
}

/// Upper bound for `|S_{2,4} Y| / |Y|` as `(num, den)`.
#[pyfunction]
fn s24_bound_ratio(n: u32) -> PyResult<(BigInt, BigInt)> {
    let q = census::s24_bound_ratio(n).map_err(py_err)?;
    Ok((q.numer().clone(), q.denom().clone()))
}

#[pymodule]
fn fmonoid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Monomial>()?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_by_rewriting, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(solve_pair, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(degree_one_solution, m)?)?;
    m.add_function(wrap_pyfunction!(basic_equation, m)?)?;
    m.add_function(wrap_pyfunction!(basic_solution, m)?)?;
    m.add_function(wrap_pyfunction!(qk_solution, m)?)?;
    m.add_function(wrap_pyfunction!(xm_census, m)?)?;
    m.add_function(wrap_pyfunction!(xm_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(s24_census, m)?)?;
    m.add_function(wrap_pyfunction!(s24_bound_ratio, m)?)?;
    Ok(())
}
