//! Explicit solutions of `a u = b v` for linear `a`, `b`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::Monomial;
use crate::poly::{left_divide, Polynomial};
use crate::sets::all_monomials;

fn x(f: Field, i: u32) -> Polynomial {
    Polynomial::generator(f, i)
}

fn check_same_field(f: Field, values: &[Scalar]) -> Result<()> {
    match values.iter().find(|v| !f.owns(v)) {
        Some(v) => Err(Error::param(format!("coefficient {v} is not in {f}"))),
        None => Ok(()),
    }
}

/// `gamma_ij = alpha_j beta_i - alpha_i beta_j`.
pub fn gamma(f: Field, alpha: &[Scalar], beta: &[Scalar], i: usize, j: usize) -> Scalar {
    f.sub(&f.mul(&alpha[j], &beta[i]), &f.mul(&alpha[i], &beta[j]))
}

/// `alpha_i = a<i>`, `beta_i = b<i>` for `i = 0..=m` as indeterminates of a
/// generic field.
pub fn generic_coefficients(f: Field, m: usize) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let alpha = (0..=m).map(|i| f.indeterminate(&format!("a{i}"))).collect::<Result<_>>()?;
    let beta = (0..=m).map(|i| f.indeterminate(&format!("b{i}"))).collect::<Result<_>>()?;
    Ok((alpha, beta))
}

/// Degree-`m` solution of
/// `(alpha_0 x_0 + ... + alpha_m x_m) u = (beta_0 x_0 + ... + beta_m x_m) v`
/// built by the recursion `f_1 = sigma_0`,
/// `f_{k+1} = (sum_{i>k} gamma_ki x_i) phi(f_k)`, with
/// `sigma_i = beta_i a - alpha_i b` and `f_k = a u_{k-1} + b v_{k-1}`.
/// Requires every `gamma_ij` (`i != j`) to be nonzero.
pub fn degree_one_solution(
    f: Field,
    alpha: &[Scalar],
    beta: &[Scalar],
) -> Result<(Polynomial, Polynomial)> {
    if alpha.is_empty() || alpha.len() != beta.len() {
        return Err(Error::param("alpha and beta need the same nonzero length"));
    }
    check_same_field(f, alpha)?;
    check_same_field(f, beta)?;
    let m = alpha.len() - 1;
    let a = Polynomial::linear(f, alpha);
    let b = Polynomial::linear(f, beta);
    if a.is_zero() {
        return Err(Error::ZeroInput("a"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("b"));
    }
    if m == 0 {
        return Ok((
            Polynomial::constant(f, beta[0].clone()),
            Polynomial::constant(f, alpha[0].clone()),
        ));
    }
    for i in 0..=m {
        for j in 0..=m {
            if i != j && gamma(f, alpha, beta, i, j).is_zero() {
                return Err(Error::Degenerate(format!("gamma_{i}{j} vanishes")));
            }
        }
    }
    let lin = |k: usize, range: std::ops::Range<usize>| {
        Polynomial::from_terms(
            f,
            range.map(|i| (Monomial::generator(i as u32), gamma(f, alpha, beta, k, i))),
        )
    };
    let check = |fk: &Polynomial, u: &Polynomial, v: &Polynomial, step: usize| {
        if &(&a * u) + &(&b * v) == *fk {
            Ok(())
        } else {
            Err(Error::Degenerate(format!("recursion identity fails at step {step}")))
        }
    };

    let mut fk = lin(0, 1..m + 1);
    let mut u = Polynomial::constant(f, beta[0].clone());
    let mut v = Polynomial::constant(f, f.neg(&alpha[0]));
    check(&fk, &u, &v, 1)?;
    for k in 1..m {
        let low = lin(k, 0..k);
        let high = lin(k, k + 1..m + 1);
        let sf = fk.shift(1);
        u = &sf.scale(&beta[k]) - &(&u * &low);
        v = &(-&(&v * &low)) - &sf.scale(&alpha[k]);
        fk = &high * &sf;
        check(&fk, &u, &v, k + 1)?;
    }
    let sigma = lin(m, 0..m);
    let sf = fk.shift(1);
    let u = &sf.scale(&beta[m]) - &(&u * &sigma);
    let v = &(&v * &sigma) + &sf.scale(&alpha[m]);
    if &a * &u != &b * &v {
        return Err(Error::Degenerate("final combination does not solve the equation".into()));
    }
    Ok((u, v))
}

/// `(x0 + alpha x2) u0 = (x1 + beta x2) v0` with
/// `u0 = beta x0x3 + beta^2 x0x4 - alpha x1x3 - alpha beta x1x4 - alpha beta x3^2 - alpha beta^2 x3x4`,
/// `v0 = beta x0^2 - alpha x0x1 - alpha^2 x3^2 - alpha^2 beta x3x4`.
pub fn basic_solution(f: Field, alpha: &Scalar, beta: &Scalar) -> Result<(Polynomial, Polynomial)> {
    check_same_field(f, &[alpha.clone(), beta.clone()])?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::Degenerate("basic solution needs nonzero alpha and beta".into()));
    }
    let m = |w: &[u32]| Monomial::from_normal(w).expect("normal form");
    let (al, be) = (alpha, beta);
    let ab = f.mul(al, be);
    let u = Polynomial::from_terms(
        f,
        [
            (m(&[0, 3]), be.clone()),
            (m(&[0, 4]), f.mul(be, be)),
            (m(&[1, 3]), f.neg(al)),
            (m(&[1, 4]), f.neg(&ab)),
            (m(&[3, 3]), f.neg(&ab)),
            (m(&[3, 4]), f.neg(&f.mul(&ab, be))),
        ],
    );
    let v = Polynomial::from_terms(
        f,
        [
            (m(&[0, 0]), be.clone()),
            (m(&[0, 1]), f.neg(al)),
            (m(&[3, 3]), f.neg(&f.mul(al, al))),
            (m(&[3, 4]), f.neg(&f.mul(&f.mul(al, al), be))),
        ],
    );
    Ok((u, v))
}

/// The basic solution divided by `beta`; for `alpha = beta` this is
/// `u0 = x0x3 + beta x0x4 - x1x3 - beta x1x4 - beta x3^2 - beta^2 x3x4`,
/// `v0 = x0^2 - x0x1 - beta x3^2 - beta^2 x3x4`.
pub fn normalized_basic_solution(
    f: Field,
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<(Polynomial, Polynomial)> {
    let (u, v) = basic_solution(f, alpha, beta)?;
    let s = f.inv(beta).expect("beta is nonzero");
    Ok((u.scale(&s), v.scale(&s)))
}

/// `a = x0 + alpha x2`, `b = x1 + beta x2`.
pub fn basic_equation(f: Field, alpha: &Scalar, beta: &Scalar) -> (Polynomial, Polynomial) {
    (
        &x(f, 0) + &x(f, 2).scale(alpha),
        &x(f, 1) + &x(f, 2).scale(beta),
    )
}

/// Parameters `w_0, ..., w_k` of the solution family, `w_j` in `K[M_j]`
/// (all indices at least `j`).
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub beta: Scalar,
    pub w: Vec<Polynomial>,
}

impl FamilyParams {
    pub fn validate(&self, f: Field) -> Result<()> {
        if self.beta.is_zero() {
            return Err(Error::Degenerate("beta must be nonzero".into()));
        }
        check_same_field(f, std::slice::from_ref(&self.beta))?;
        for (j, w) in self.w.iter().enumerate() {
            if w.field() != f {
                return Err(Error::FieldMismatch {
                    left: f,
                    right: w.field(),
                });
            }
            if w.min_index().is_some_and(|i| (i as usize) < j) {
                return Err(Error::Malformed(format!(
                    "w_{j} = {w} uses an index below {j}"
                )));
            }
        }
        Ok(())
    }

    /// Random homogeneous parameters for a family member of degree `d >= 2`:
    /// `w_j` of degree `d - 2 - j` with indices in `[j, max_index]`.
    pub fn random(f: Field, beta: Scalar, d: usize, max_index: u32, seed: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::param("family members have degree at least 2"));
        }
        if (max_index as usize) < d - 2 {
            return Err(Error::param("max_index must be at least d - 2"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = (0..=d - 2)
            .map(|j| {
                let terms: Vec<(Monomial, Scalar)> = all_monomials(d - 2 - j, max_index - j as u32)
                    .into_iter()
                    .map(|m| (m.shift(j as u32), f.random(&mut rng)))
                    .collect();
                Polynomial::from_terms(f, terms)
            })
            .collect();
        Ok(FamilyParams { beta, w })
    }
}

/// Solution of `(x0 + alpha x2) u = (x1 + beta x2) v` from the recursion
/// `u = u0 w0 + alpha^-1 (x1 + beta x3) phi(u')`,
/// `v = v0 w0 + alpha^-1 x0 phi(v') + x3 phi(u')`, where `(u0, v0)` is the
/// normalized basic solution and `(u', v')` is the member for parameters
/// `(beta, beta)` built from `alpha phi^-1(w_1), alpha phi^-1(w_2), ...`.
/// For `alpha = beta` the first component equals
/// [`family_u_closed_form`].
pub fn solution_family(
    f: Field,
    params: &FamilyParams,
    alpha: &Scalar,
) -> Result<(Polynomial, Polynomial)> {
    params.validate(f)?;
    check_same_field(f, std::slice::from_ref(alpha))?;
    if alpha.is_zero() {
        return Err(Error::Degenerate("alpha must be nonzero".into()));
    }
    family_rec(f, alpha, &params.beta, &params.w)
}

fn family_rec(
    f: Field,
    alpha: &Scalar,
    beta: &Scalar,
    w: &[Polynomial],
) -> Result<(Polynomial, Polynomial)> {
    let Some((w0, rest)) = w.split_first() else {
        return Ok((Polynomial::zero(f), Polynomial::zero(f)));
    };
    let (u0, v0) = normalized_basic_solution(f, alpha, beta)?;
    let inner: Vec<Polynomial> = rest
        .iter()
        .map(|wj| wj.unshift(1).expect("validated index bound").scale(alpha))
        .collect();
    let (up, vp) = family_rec(f, beta, beta, &inner)?;
    let ainv = f.inv(alpha).expect("alpha is nonzero");
    let (pu, pv) = (up.shift(1), vp.shift(1));
    let lead = &x(f, 1) + &x(f, 3).scale(beta);
    let u = &(&u0 * w0) + &(&lead * &pu).scale(&ainv);
    let v = &(&(&v0 * w0) + &(&x(f, 0) * &pv).scale(&ainv)) + &(&x(f, 3) * &pu);
    Ok((u, v))
}

/// `u = sum_j prod_{i=1..j} (x_i + beta x_{i+2}) phi^j(u0) w_j` for the
/// normalized basic solution with `alpha = beta`.
pub fn family_u_closed_form(f: Field, params: &FamilyParams) -> Result<Polynomial> {
    params.validate(f)?;
    let (u0, _) = normalized_basic_solution(f, &params.beta, &params.beta)?;
    let mut prefix = Polynomial::one(f);
    let mut u = Polynomial::zero(f);
    for (j, w) in params.w.iter().enumerate() {
        if j > 0 {
            let i = j as u32;
            prefix = &prefix * &(&x(f, i) + &x(f, i + 2).scale(&params.beta));
        }
        u = &u + &(&(&prefix * &u0.shift(j as u32)) * w);
    }
    Ok(u)
}

/// Readings of the product `(a1 x0 + b1 x1)(a1 x0 + b1 x2)...(ak x0 + bk x_{k+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QkReading {
    /// `prod_{i=1..k} (alpha_i x0 + beta_i x_i)`.
    Diagonal,
    /// `prod_{i=1..k} (alpha_i x0 + beta_i x_{i+1})`.
    Shifted,
    /// `(alpha_1 x0 + beta_1 x1) prod_{i=1..k} (alpha_i x0 + beta_i x_{i+1})`.
    Literal,
}

pub fn qk_product(f: Field, pairs: &[(Scalar, Scalar)], reading: QkReading) -> Polynomial {
    let factor = |(al, be): &(Scalar, Scalar), i: u32| &x(f, 0).scale(al) + &x(f, i).scale(be);
    let mut p = Polynomial::one(f);
    if reading == QkReading::Literal {
        if let Some(first) = pairs.first() {
            p = factor(first, 1);
        }
    }
    for (i, pair) in pairs.iter().enumerate() {
        let idx = match reading {
            QkReading::Diagonal => i as u32 + 1,
            QkReading::Shifted | QkReading::Literal => i as u32 + 2,
        };
        p = &p * &factor(pair, idx);
    }
    p
}

/// Quotients `u_i` with `(alpha_i x0 + beta_i x1) u_i = P` for the chosen
/// reading of `P`, so all `k` products coincide.
pub fn qk_system_solution(
    f: Field,
    pairs: &[(Scalar, Scalar)],
    reading: QkReading,
) -> Result<Vec<Polynomial>> {
    if pairs.is_empty() {
        return Err(Error::param("k must be at least 1"));
    }
    for (al, be) in pairs {
        check_same_field(f, &[al.clone(), be.clone()])?;
        if al.is_zero() && be.is_zero() {
            return Err(Error::ZeroInput("pair"));
        }
    }
    let p = qk_product(f, pairs, reading);
    pairs
        .iter()
        .enumerate()
        .map(|(i, (al, be))| {
            let d = &x(f, 0).scale(al) + &x(f, 1).scale(be);
            left_divide(&d, &p)?.ok_or_else(|| {
                Error::Division(format!("{d} does not left-divide the product (pair {})", i + 1))
            })
        })
        .collect()
}

/// Equations `L_1 u_1 - L_i u_i = 0` (`i = 2..k`) for the chain
/// `L_1 u_1 = ... = L_k u_k` with `L_i = alpha_i x0 + beta_i x1`.
pub fn qk_equations(f: Field, pairs: &[(Scalar, Scalar)]) -> Vec<Vec<Polynomial>> {
    let l: Vec<Polynomial> = pairs
        .iter()
        .map(|(al, be)| &x(f, 0).scale(al) + &x(f, 1).scale(be))
        .collect();
    (1..l.len())
        .map(|i| {
            let mut row = vec![Polynomial::zero(f); l.len()];
            row[0] = l[0].clone();
            row[i] = -&l[i];
            row
        })
        .collect()
}
