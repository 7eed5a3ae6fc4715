//! Linear equations over `K[M]` with unknowns restricted to finite supports.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::SparseMatrix;
use crate::monomial::{left_quotient, right_lcm, Monomial};
use crate::poly::{left_divide, Polynomial};
use crate::sets::{binomial, catalan_triangle_u64, minimal_top, SetDescriptor};

/// The system `sum_j a_ij * y_j = 0` (one equation per row of `coeffs`),
/// assembled into a matrix over the field with one column per
/// (unknown, support monomial) pair and one row per (equation, product
/// monomial) pair.
#[derive(Clone, Debug)]
pub struct OreSystem {
    coeffs: Vec<Vec<Polynomial>>,
    descriptors: Vec<SetDescriptor>,
    supports: Vec<Vec<Monomial>>,
    offsets: Vec<usize>,
    matrix: SparseMatrix,
    rows: Vec<(usize, Monomial)>,
}

impl OreSystem {
    pub fn build(coeffs: Vec<Vec<Polynomial>>, supports: &[SetDescriptor]) -> Result<Self> {
        let n = supports.len();
        if coeffs.is_empty() || n == 0 {
            return Err(Error::param("a system needs at least one equation and one unknown"));
        }
        if let Some(r) = coeffs.iter().find(|r| r.len() != n) {
            return Err(Error::param(format!(
                "equation has {} coefficients for {n} unknowns",
                r.len()
            )));
        }
        let field = coeffs[0][0].field();
        for c in coeffs.iter().flatten() {
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: c.field(),
                });
            }
        }
        let mut enumerated = Vec::with_capacity(n);
        for (j, d) in supports.iter().enumerate() {
            let e = d.enumerate()?;
            if e.is_empty() {
                return Err(Error::EmptySupport(j));
            }
            enumerated.push(e);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for e in &enumerated {
            offsets.push(offsets.last().unwrap() + e.len());
        }

        let mut rows: Vec<(usize, Monomial)> = Vec::new();
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (i, eq) in coeffs.iter().enumerate() {
            let mut index: HashMap<Monomial, usize> = HashMap::new();
            let block = rows.len();
            let mut block_rows = Vec::new();
            for (j, a) in eq.iter().enumerate() {
                for (col, y) in enumerated[j].iter().enumerate() {
                    for (m, c) in a.terms() {
                        let w = m.multiply(y);
                        let r = match index.get(&w) {
                            Some(&r) => r,
                            None => {
                                let r = block_rows.len();
                                index.insert(w.clone(), r);
                                block_rows.push(w);
                                r
                            }
                        };
                        entries.push((block + r, offsets[j] + col, c.clone()));
                    }
                }
            }
            // deterministic row order within a block
            let mut order: Vec<usize> = (0..block_rows.len()).collect();
            order.sort_by(|&x, &y| block_rows[x].cmp(&block_rows[y]));
            let mut pos = vec![0; order.len()];
            for (p, &r) in order.iter().enumerate() {
                pos[r] = p;
            }
            for e in entries.iter_mut().filter(|e| e.0 >= block) {
                e.0 = block + pos[e.0 - block];
            }
            rows.extend(order.into_iter().map(|r| (i, block_rows[r].clone())));
        }
        let mut matrix = SparseMatrix::new(rows.len(), *offsets.last().unwrap(), field);
        for (r, c, v) in &entries {
            matrix.add_to(*r, *c, v);
        }
        Ok(OreSystem {
            coeffs,
            descriptors: supports.to_vec(),
            supports: enumerated,
            offsets,
            matrix,
            rows,
        })
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn coefficients(&self) -> &[Vec<Polynomial>] {
        &self.coeffs
    }

    pub fn supports(&self) -> &[Vec<Monomial>] {
        &self.supports
    }

    /// Row labels: (equation, product monomial).
    pub fn row_labels(&self) -> &[(usize, Monomial)] {
        &self.rows
    }

    pub fn unknowns(&self) -> usize {
        self.supports.len()
    }

    /// Splits a kernel vector into one polynomial per unknown.
    pub fn unpack(&self, x: &[Scalar]) -> Vec<Polynomial> {
        let f = self.field();
        (0..self.unknowns())
            .map(|j| {
                Polynomial::from_terms(
                    f,
                    self.supports[j]
                        .iter()
                        .cloned()
                        .zip(x[self.offsets[j]..self.offsets[j + 1]].iter().cloned()),
                )
            })
            .collect()
    }

    /// Dimension of the solution space over the given supports.
    pub fn nullity(&self) -> usize {
        self.matrix.cols() - self.matrix.rank()
    }

    /// Kernel basis in deterministic column order, as tuples of polynomials.
    pub fn solutions(&self, limit: Option<usize>) -> Vec<Vec<Polynomial>> {
        let basis = match limit {
            Some(l) => self.matrix.nullspace_limited(l),
            None => self.matrix.nullspace(),
        };
        basis.iter().map(|v| self.unpack(v)).collect()
    }

    fn report(&self, unknowns: Vec<Polynomial>, basis_size: usize, method: &str) -> SolutionReport {
        SolutionReport::new(
            self.coeffs.clone(),
            unknowns,
            self.descriptors.iter().map(|d| d.to_string()).collect(),
            basis_size,
            method,
        )
    }
}

/// A tuple of polynomials claimed to solve `sum_j a_ij * y_j = 0`, together
/// with the residual recomputed by substitution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub field: Field,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<u64>,
    pub method: String,
    pub supports: Vec<String>,
    pub equations: Vec<Vec<Polynomial>>,
    pub unknowns: Vec<Polynomial>,
    pub basis_size: usize,
    pub verified: bool,
    pub residual: Vec<Polynomial>,
}

impl SolutionReport {
    pub fn new(
        equations: Vec<Vec<Polynomial>>,
        unknowns: Vec<Polynomial>,
        supports: Vec<String>,
        basis_size: usize,
        method: &str,
    ) -> Self {
        let field = unknowns
            .first()
            .map(Polynomial::field)
            .unwrap_or(Field::Rational);
        let (verified, residual) = verify_solution(&equations, &unknowns)
            .unwrap_or_else(|_| (false, Vec::new()));
        SolutionReport {
            field,
            seeds: Vec::new(),
            method: method.to_string(),
            supports,
            equations,
            unknowns,
            basis_size,
            verified,
            residual,
        }
    }

    /// Recomputes the residual from the stored equations and unknowns.
    pub fn recheck(&self) -> Result<bool> {
        Ok(verify_solution(&self.equations, &self.unknowns)?.0)
    }

    pub fn is_nonzero(&self) -> bool {
        self.unknowns.iter().any(|u| !u.is_zero())
    }
}

/// Substitutes `unknowns` into every equation; returns whether all residuals
/// vanish together with the residuals.
pub fn verify_solution(
    equations: &[Vec<Polynomial>],
    unknowns: &[Polynomial],
) -> Result<(bool, Vec<Polynomial>)> {
    let mut residual = Vec::with_capacity(equations.len());
    for eq in equations {
        if eq.len() != unknowns.len() {
            return Err(Error::param(format!(
                "equation has {} coefficients for {} unknowns",
                eq.len(),
                unknowns.len()
            )));
        }
        let mut r = Polynomial::zero(unknowns[0].field());
        for (a, y) in eq.iter().zip(unknowns) {
            r = r.try_add(&a.try_mul(y)?)?;
        }
        residual.push(r);
    }
    Ok((residual.iter().all(Polynomial::is_zero), residual))
}

/// Coefficient row `[a, -b]` for `a u = b v`.
pub fn pair_equation(a: &Polynomial, b: &Polynomial) -> Vec<Vec<Polynomial>> {
    vec![vec![a.clone(), -b]]
}

/// All `(u, v)` supported on `support` with `a u = b v`, as a kernel basis.
pub fn solve_pair(
    a: &Polynomial,
    b: &Polynomial,
    support: &SetDescriptor,
) -> Result<Vec<SolutionReport>> {
    solve_pair_limited(a, b, support, None)
}

/// As [`solve_pair`] but stops after `limit` basis vectors when given.
pub fn solve_pair_limited(
    a: &Polynomial,
    b: &Polynomial,
    support: &SetDescriptor,
    limit: Option<usize>,
) -> Result<Vec<SolutionReport>> {
    if a.is_zero() {
        return Err(Error::ZeroInput("a"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("b"));
    }
    let sys = OreSystem::build(pair_equation(a, b), &[support.clone(), support.clone()])?;
    let sols = sys.solutions(limit);
    let n = sols.len();
    Ok(sols
        .into_iter()
        .map(|s| sys.report(s, n, "nullspace"))
        .collect())
}

/// First kernel vector of the system, if the kernel is nontrivial.
pub fn solve_linear_system(
    coeffs: Vec<Vec<Polynomial>>,
    supports: &[SetDescriptor],
) -> Result<Option<SolutionReport>> {
    let sys = OreSystem::build(coeffs, supports)?;
    let nullity = sys.nullity();
    Ok(sys
        .solutions(Some(1))
        .into_iter()
        .next()
        .map(|s| sys.report(s, nullity, "nullspace")))
}

/// Limits for the homogeneous search inside [`ore_reduce`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReduceBudget {
    /// Largest support size (per unknown) tried for a homogeneous pair.
    pub max_support: u64,
    /// Largest degree of `u, v` tried for a homogeneous pair.
    pub max_degree: u32,
    /// Keep only the lowest homogeneous components of the final solution
    /// when both inputs are homogeneous.
    pub minimal_components: bool,
}

impl Default for ReduceBudget {
    fn default() -> Self {
        ReduceBudget {
            max_support: 4000,
            max_degree: 24,
            minimal_components: false,
        }
    }
}

/// Prime used to probe rational homogeneous pairs before solving over `Q`.
const PROBE_PRIME: u64 = 2_147_483_647;

/// Solves `a u = b v` for homogeneous `a`, `b`. A common left monomial factor
/// is cancelled first and monomial pairs are answered by their right lcm.
/// Otherwise, with `t` the smallest top such that every term `w` of `a` and
/// `b` lies in `S_{t, t + deg w}`, `u` and `v` are searched over
/// `S_{t + deg a, n}` and `S_{t + deg b, n}` for increasing `n`; both
/// products then lie in `S_{t,n}`. Returns the solution and the supports
/// of `u` and `v`.
pub fn solve_homogeneous(
    a: &Polynomial,
    b: &Polynomial,
    budget: &ReduceBudget,
) -> Result<(Polynomial, Polynomial, [SetDescriptor; 2])> {
    if a.is_zero() {
        return Err(Error::ZeroInput("a"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("b"));
    }
    if !a.is_homogeneous() || !b.is_homogeneous() {
        return Err(Error::param("homogeneous pair expected"));
    }
    let (a, b) = cancel_left_monomial(a, b);
    if a.len() == 1 && b.len() == 1 {
        let (ma, ca) = a.terms().next().unwrap();
        let (mb, cb) = b.terms().next().unwrap();
        let lcm = right_lcm(ma, mb, None)?;
        let qa = left_quotient(ma, &lcm).expect("lcm is a right multiple");
        let qb = left_quotient(mb, &lcm).expect("lcm is a right multiple");
        let f = a.field();
        let supports = [
            SetDescriptor::explicit([qa.clone()]),
            SetDescriptor::explicit([qb.clone()]),
        ];
        return Ok((
            Polynomial::term(f, qa, cb.clone()),
            Polynomial::term(f, qb, ca.clone()),
            supports,
        ));
    }
    let (da, db) = (a.degree().unwrap() as u32, b.degree().unwrap() as u32);
    let one = Polynomial::one(a.field());
    if let Some(q) = small_left_quotient(&a, &b, budget.max_support)? {
        let supports = [support_of(&q), SetDescriptor::explicit([Monomial::identity()])];
        return Ok((q, one, supports));
    }
    if let Some(q) = small_left_quotient(&b, &a, budget.max_support)? {
        let supports = [SetDescriptor::explicit([Monomial::identity()]), support_of(&q)];
        return Ok((one, q, supports));
    }
    let top = a.support().chain(b.support()).map(minimal_top).max().unwrap_or(1);
    let (ku, kv) = (top + da, top + db);
    let probe = match a.field() {
        Field::Rational => {
            let pf = Field::Prime(PROBE_PRIME);
            a.to_field(pf).zip(b.to_field(pf))
        }
        _ => None,
    };
    for deg in 0..=budget.max_degree {
        let n = ku.max(kv) + deg;
        let too_big = |k| catalan_triangle_u64(n, k).map_or(true, |s| s > budget.max_support);
        if too_big(ku) || too_big(kv) {
            break;
        }
        let supports = [SetDescriptor::catalan(ku, n)?, SetDescriptor::catalan(kv, n)?];
        if let Some((pa, pb)) = &probe {
            // rank can only drop modulo p, so a trivial kernel there is final
            if OreSystem::build(pair_equation(pa, pb), &supports)?.nullity() == 0 {
                continue;
            }
        }
        if let Some(r) = solve_linear_system(pair_equation(&a, &b), &supports)? {
            let mut it = r.unknowns.into_iter();
            let (u, v) = (it.next().unwrap(), it.next().unwrap());
            return Ok((u, v, supports));
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no homogeneous solution for ({a}, {b}) within degree {} and support size {}",
        budget.max_degree, budget.max_support
    )))
}

/// `q` with `a q = p` for homogeneous `a`, `p`, when the candidate quotient
/// space has at most `cap` monomials.
fn small_left_quotient(a: &Polynomial, p: &Polynomial, cap: u64) -> Result<Option<Polynomial>> {
    let (Some(da), Some(dp)) = (a.degree(), p.degree()) else {
        return Ok(None);
    };
    if dp < da {
        return Ok(None);
    }
    let k = (dp - da) as u32;
    let candidates = binomial(k + p.max_index().unwrap_or(0), k);
    if candidates > BigUint::from(cap) {
        return Ok(None);
    }
    left_divide(a, p)
}

fn support_of(p: &Polynomial) -> SetDescriptor {
    SetDescriptor::explicit(p.support().cloned())
}

/// Strips generators that left-divide every term of both polynomials.
fn cancel_left_monomial(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    let (mut a, mut b) = (a.clone(), b.clone());
    'outer: loop {
        let Some(first) = a.support().next().cloned() else {
            break;
        };
        for i in first.indices().iter().enumerate().map(|(q, &z)| z.wrapping_sub(q as u32)) {
            if i > first.max_index().unwrap_or(0) {
                continue;
            }
            if let (Some(qa), Some(qb)) = (left_divide_generator(&a, i), left_divide_generator(&b, i)) {
                a = qa;
                b = qb;
                continue 'outer;
            }
        }
        break;
    }
    (a, b)
}

fn left_divide_generator(p: &Polynomial, i: u32) -> Option<Polynomial> {
    let terms = p
        .terms()
        .map(|(m, c)| m.left_divide_generator(i).map(|q| (q, c.clone())))
        .collect::<Option<Vec<_>>>()?;
    Some(Polynomial::from_terms(p.field(), terms))
}

/// Nonzero `(u, v)` with `a u = b v` by induction on the sum of widths:
/// solve the lowest homogeneous components, subtract, and recurse.
pub fn ore_reduce(a: &Polynomial, b: &Polynomial, budget: &ReduceBudget) -> Result<SolutionReport> {
    if a.is_zero() {
        return Err(Error::ZeroInput("a"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("b"));
    }
    let mut supports = Vec::new();
    let (mut u, mut v) = reduce_rec(a, b, budget, &mut supports)?;
    if budget.minimal_components && a.is_homogeneous() && b.is_homogeneous() {
        let lo = |p: &Polynomial| p.component(p.min_degree().unwrap());
        let (u0, v0) = (lo(&u), lo(&v));
        if verify_solution(&pair_equation(a, b), &[u0.clone(), v0.clone()])?.0 {
            u = u0;
            v = v0;
        }
    }
    if u.is_zero() || v.is_zero() {
        return Err(Error::Degenerate("reduction produced a zero component".into()));
    }
    let supports = supports.iter().map(|s: &SetDescriptor| s.to_string()).collect();
    Ok(SolutionReport::new(pair_equation(a, b), vec![u, v], supports, 1, "width-reduction"))
}

fn reduce_rec(
    a: &Polynomial,
    b: &Polynomial,
    budget: &ReduceBudget,
    supports: &mut Vec<SetDescriptor>,
) -> Result<(Polynomial, Polynomial)> {
    let (wa, wb) = (a.width()?, b.width()?);
    if wa > wb {
        let (v, u) = reduce_rec(b, a, budget, supports)?;
        return Ok((u, v));
    }
    let a1 = a.component(a.min_degree().unwrap());
    let b1 = b.component(b.min_degree().unwrap());
    let (u1, v1, found) = solve_homogeneous(&a1, &b1, budget)?;
    supports.extend(found);
    if wa + wb == 0 {
        return Ok((u1, v1));
    }
    let b2 = &(b * &v1) - &(a * &u1);
    if b2.is_zero() {
        return Ok((u1, v1));
    }
    let (u, v) = reduce_rec(a, &b2, budget, supports)?;
    Ok((&u + &(&u1 * &v), &v1 * &v))
}
