//! Exact sparse linear algebra: rank and right kernel over `Q` or `GF(p)`.
//!
//! Elimination is sparse with minimum-column-count pivoting (ties broken by
//! column, then by shortest row, then by row index). Over `GF(p)` the active
//! part switches to dense row reduction once it fills in. Over `Q` each row is
//! kept as a primitive integer vector: the update is fraction-free and the
//! row content is divided out after every step.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{inv_mod, Field, Scalar};

type Row<E> = Vec<(u32, E)>;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Row<Scalar>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize, field: Field) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(field: Field, dense: &[Vec<Scalar>]) -> Self {
        let cols = dense.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(dense.len(), cols, field);
        for (r, row) in dense.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.add_to(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(u32, Scalar)] {
        &self.data[r]
    }

    /// Adds `v` to entry `(r, c)`, dropping it if the sum vanishes.
    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(pos) => {
                let s = self.field.add(&row[pos].1, v);
                if s.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = s;
                }
            }
            Err(pos) => row.insert(pos, (c as u32, v.clone())),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows, self.field);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c as usize].push((r as u32, v.clone()));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter().fold(self.field.zero(), |acc, (c, e)| {
                    self.field.add(&acc, &self.field.mul(e, &v[*c as usize]))
                })
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.eliminate(false).rank()
    }

    /// Basis of the right kernel. Each basis vector has a one in its own free
    /// column and zeros in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.nullspace_limited(usize::MAX)
    }

    /// The first `limit` kernel basis vectors, by increasing free column.
    pub fn nullspace_limited(&self, limit: usize) -> Vec<Vec<Scalar>> {
        self.eliminate(true).kernel(limit)
    }

    /// Some `x` with `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.clone();
        aug.cols += 1;
        for (r, v) in b.iter().enumerate() {
            aug.add_to(r, self.cols, &self.field.neg(v));
        }
        let elim = aug.eliminate(true);
        elim.kernel_vector_with(self.cols).map(|mut x| {
            x.pop();
            x
        })
    }

    fn eliminate(&self, keep_pivots: bool) -> Elimination {
        match self.field.modulus() {
            Some(p) => {
                let rows = self
                    .data
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|(c, v)| (*c, v.as_modular().expect("modular entry")))
                            .collect()
                    })
                    .collect();
                let ops = ModP { p };
                let pivots = Engine::new(ops, rows, self.cols).run(keep_pivots);
                Elimination::Mod {
                    p,
                    cols: self.cols,
                    pivots,
                }
            }
            None => {
                let rows = self.data.iter().map(|row| integer_row(row)).collect();
                let pivots = Engine::new(Integers, rows, self.cols).run(keep_pivots);
                Elimination::Int {
                    cols: self.cols,
                    pivots,
                }
            }
        }
    }

    /// Triplet text dump: header `rows cols field`, then `row col value` lines.
    pub fn to_triplets(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.field);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                let _ = writeln!(out, "{r} {c} {v}");
            }
        }
        out
    }

    pub fn from_triplets(text: &str) -> Result<SparseMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::parse(0, "empty matrix dump"))?;
        let mut h = header.split_whitespace();
        let rows: usize = next_num(&mut h)?;
        let cols: usize = next_num(&mut h)?;
        let field: Field = h
            .next()
            .ok_or_else(|| Error::parse(0, "missing field in header"))?
            .parse()?;
        let mut m = SparseMatrix::new(rows, cols, field);
        for line in lines {
            let mut t = line.split_whitespace();
            let r: usize = next_num(&mut t)?;
            let c: usize = next_num(&mut t)?;
            let v = crate::parse::parse_scalar(
                t.next().ok_or_else(|| Error::parse(0, "missing value"))?,
                field,
            )?;
            if r >= rows || c >= cols {
                return Err(Error::param(format!("entry ({r},{c}) out of range")));
            }
            m.add_to(r, c, &v);
        }
        Ok(m)
    }
}

fn next_num<'a, T: std::str::FromStr>(it: &mut impl Iterator<Item = &'a str>) -> Result<T> {
    it.next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(0, "malformed triplet line"))
}

/// Clears denominators of a rational row and makes it primitive.
fn integer_row(row: &[(u32, Scalar)]) -> Row<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| {
        acc.lcm(v.as_rational().expect("rational entry").denom())
    });
    let mut out: Row<BigInt> = row
        .iter()
        .map(|(c, v)| {
            let q = v.as_rational().unwrap();
            (*c, q.numer() * (&lcm / q.denom()))
        })
        .collect();
    Integers.finish(&mut out);
    out
}

/// Scalar operations the elimination engine needs.
trait ElimOps {
    type E: Clone;
    /// Whether [`ElimOps::dense`] is available.
    const HAS_DENSE: bool = false;
    /// Called on each new pivot row (`pos` is the pivot entry).
    fn prepare_pivot(&self, row: &mut Row<Self::E>, pos: usize);
    /// Multipliers `(m1, m2)` so that `m1*row - m2*pivot` clears the column.
    fn multipliers(&self, pivot_val: &Self::E, row_val: &Self::E) -> (Self::E, Self::E);
    /// `m1*x - m2*y`, with absent entries passed as `None`.
    fn combine(&self, m1: &Self::E, x: Option<&Self::E>, m2: &Self::E, y: Option<&Self::E>) -> Self::E;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn finish(&self, _row: &mut Row<Self::E>) {}
    /// Optional dense completion of the active submatrix.
    fn dense(&self, _rows: Vec<Row<Self::E>>, _cols: &[u32], _keep: bool) -> Option<Vec<(u32, Row<Self::E>)>> {
        None
    }
}

#[derive(Clone, Copy)]
struct ModP {
    p: u64,
}

impl ModP {
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p < 1 << 32 {
            a * b % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }
}

impl ElimOps for ModP {
    type E = u64;
    const HAS_DENSE: bool = true;

    fn prepare_pivot(&self, row: &mut Row<u64>, pos: usize) {
        let inv = inv_mod(row[pos].1, self.p).expect("nonzero pivot");
        for e in row.iter_mut() {
            e.1 = self.mul(e.1, inv);
        }
    }

    fn multipliers(&self, _pivot_val: &u64, row_val: &u64) -> (u64, u64) {
        (1, *row_val)
    }

    #[inline]
    fn combine(&self, _m1: &u64, x: Option<&u64>, m2: &u64, y: Option<&u64>) -> u64 {
        let x = x.copied().unwrap_or(0);
        let y = y.copied().unwrap_or(0);
        let t = self.mul(*m2, y);
        if x >= t {
            x - t
        } else {
            x + (self.p - t)
        }
    }

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn dense(&self, rows: Vec<Row<u64>>, cols: &[u32], keep: bool) -> Option<Vec<(u32, Row<u64>)>> {
        Some(dense_mod_echelon(self, rows, cols, keep))
    }
}

struct Integers;

impl ElimOps for Integers {
    type E = BigInt;

    fn prepare_pivot(&self, _row: &mut Row<BigInt>, _pos: usize) {}

    fn multipliers(&self, pivot_val: &BigInt, row_val: &BigInt) -> (BigInt, BigInt) {
        let g = pivot_val.gcd(row_val);
        (pivot_val / &g, row_val / &g)
    }

    fn combine(&self, m1: &BigInt, x: Option<&BigInt>, m2: &BigInt, y: Option<&BigInt>) -> BigInt {
        match (x, y) {
            (Some(x), Some(y)) => m1 * x - m2 * y,
            (Some(x), None) => m1 * x,
            (None, Some(y)) => -(m2 * y),
            (None, None) => BigInt::zero(),
        }
    }

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn finish(&self, row: &mut Row<BigInt>) {
        let g = row
            .iter()
            .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for e in row.iter_mut() {
                e.1 = &e.1 / &g;
            }
        }
    }
}

/// Pivot rows in elimination order. Row `t` has its pivot at column `c_t` and
/// contains no pivot column chosen before `t`.
struct Engine<O: ElimOps> {
    ops: O,
    rows: Vec<Option<Row<O::E>>>,
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    col_done: Vec<bool>,
    active_nnz: usize,
    active_rows: usize,
    pivots: Vec<(u32, Row<O::E>)>,
}

/// Fill ratio of the active submatrix above which GF(p) elimination goes dense.
const DENSE_SWITCH_RATIO: f64 = 0.05;
/// Largest active submatrix (cells) handed to the dense phase.
const DENSE_MAX_CELLS: usize = 60_000_000;

impl<O: ElimOps> Engine<O> {
    fn new(ops: O, rows: Vec<Row<O::E>>, cols: usize) -> Self {
        let mut col_rows = vec![Vec::new(); cols];
        let mut col_count = vec![0u32; cols];
        let mut active_nnz = 0;
        let mut active_rows = 0;
        let rows: Vec<Option<Row<O::E>>> = rows
            .into_iter()
            .enumerate()
            .map(|(r, row)| {
                if row.is_empty() {
                    return None;
                }
                for (c, _) in &row {
                    col_rows[*c as usize].push(r as u32);
                    col_count[*c as usize] += 1;
                }
                active_nnz += row.len();
                active_rows += 1;
                Some(row)
            })
            .collect();
        Engine {
            ops,
            rows,
            col_rows,
            col_count,
            col_done: vec![false; cols],
            active_nnz,
            active_rows,
            pivots: Vec::new(),
        }
    }

    fn run(mut self, keep_pivots: bool) -> Vec<(u32, Row<O::E>)> {
        let cols = self.col_count.len();
        let mut remaining_cols = self.col_count.iter().filter(|&&c| c > 0).count();
        while self.active_rows > 0 {
            let cells = self.active_rows * remaining_cols;
            if O::HAS_DENSE
                && cells > 0
                && cells <= DENSE_MAX_CELLS
                && self.active_nnz as f64 > DENSE_SWITCH_RATIO * cells as f64
                && self.active_rows > 64
            {
                let live: Vec<u32> = (0..cols as u32)
                    .filter(|&c| !self.col_done[c as usize] && self.col_count[c as usize] > 0)
                    .collect();
                let rows: Vec<Row<O::E>> = self.rows.iter_mut().filter_map(Option::take).collect();
                if let Some(mut rest) = self.ops.dense(rows, &live, keep_pivots) {
                    self.pivots.append(&mut rest);
                    return self.pivots;
                }
                unreachable!("dense phase declined after taking rows");
            }
            // column with fewest active rows
            let mut best: Option<(u32, usize)> = None;
            for c in 0..cols {
                let n = self.col_count[c];
                if n > 0 && !self.col_done[c] && best.is_none_or(|(bn, _)| n < bn) {
                    best = Some((n, c));
                    if n == 1 {
                        break;
                    }
                }
            }
            let Some((_, col)) = best else { break };
            self.pivot_on(col as u32, keep_pivots);
            remaining_cols -= 1;
        }
        self.pivots
    }

    fn holds(&self, r: u32, col: u32) -> Option<usize> {
        self.rows[r as usize]
            .as_ref()
            .and_then(|row| row.binary_search_by_key(&col, |e| e.0).ok())
    }

    fn pivot_on(&mut self, col: u32, keep_pivots: bool) {
        let mut candidates: Vec<u32> = std::mem::take(&mut self.col_rows[col as usize]);
        candidates.sort_unstable();
        candidates.dedup();
        candidates.retain(|&r| self.holds(r, col).is_some());
        let (&pr, _) = candidates
            .iter()
            .map(|r| (r, self.rows[*r as usize].as_ref().unwrap().len()))
            .min_by_key(|&(r, len)| (len, *r))
            .expect("column count was positive");
        let mut prow = self.rows[pr as usize].take().unwrap();
        self.active_rows -= 1;
        self.active_nnz -= prow.len();
        for (c, _) in &prow {
            self.col_count[*c as usize] -= 1;
        }
        self.col_done[col as usize] = true;
        let ppos = prow.binary_search_by_key(&col, |e| e.0).unwrap();
        self.ops.prepare_pivot(&mut prow, ppos);
        let pval = prow[ppos].1.clone();

        for &r in candidates.iter().filter(|&&r| r != pr) {
            let row = self.rows[r as usize].take().unwrap();
            let rpos = row.binary_search_by_key(&col, |e| e.0).unwrap();
            let (m1, m2) = self.ops.multipliers(&pval, &row[rpos].1);
            let old_len = row.len();
            let mut out: Row<O::E> = Vec::with_capacity(row.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < prow.len() {
                let ci = row.get(i).map_or(u32::MAX, |e| e.0);
                let cj = prow.get(j).map_or(u32::MAX, |e| e.0);
                if ci == col || cj == col {
                    // the pivot column cancels by construction
                    if ci == col {
                        i += 1;
                    }
                    if cj == col {
                        j += 1;
                    }
                    continue;
                }
                if ci < cj {
                    let v = self.ops.combine(&m1, Some(&row[i].1), &m2, None);
                    out.push((ci, v));
                    i += 1;
                } else if cj < ci {
                    let v = self.ops.combine(&m1, None, &m2, Some(&prow[j].1));
                    if !self.ops.is_zero(&v) {
                        self.col_count[cj as usize] += 1;
                        self.col_rows[cj as usize].push(r);
                        out.push((cj, v));
                    }
                    j += 1;
                } else {
                    let v = self.ops.combine(&m1, Some(&row[i].1), &m2, Some(&prow[j].1));
                    if self.ops.is_zero(&v) {
                        self.col_count[ci as usize] -= 1;
                    } else {
                        out.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.col_count[col as usize] -= 1;
            self.active_nnz = self.active_nnz + out.len() - old_len;
            if out.is_empty() {
                self.active_rows -= 1;
            } else {
                self.ops.finish(&mut out);
                self.rows[r as usize] = Some(out);
            }
        }
        if keep_pivots {
            self.pivots.push((col, prow));
        } else {
            self.pivots.push((col, Vec::new()));
        }
    }
}

/// Row echelon form of the active rows restricted to `cols`, over GF(p).
fn dense_mod_echelon(ops: &ModP, rows: Vec<Row<u64>>, cols: &[u32], keep: bool) -> Vec<(u32, Row<u64>)> {
    let p = ops.p;
    let width = cols.len();
    let local = |c: u32| cols.binary_search(&c).expect("live column");
    let mut mat: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|row| {
            let mut d = vec![0u64; width];
            for (c, v) in row {
                d[local(c)] = v;
            }
            d
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for lc in 0..width {
        let Some(pr) = (rank..mat.len()).find(|&r| mat[r][lc] != 0) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = inv_mod(mat[rank][lc], p).unwrap();
        {
            let prow = &mut mat[rank];
            for v in prow[lc..].iter_mut() {
                *v = ops.mul(*v, inv);
            }
        }
        let (top, bottom) = mat.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[lc];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            if p < 1 << 32 {
                for (x, &y) in row[lc..].iter_mut().zip(&prow[lc..]) {
                    *x = (*x + nf * y) % p;
                }
            } else {
                for (x, &y) in row[lc..].iter_mut().zip(&prow[lc..]) {
                    *x = ((*x as u128 + nf as u128 * y as u128) % p as u128) as u64;
                }
            }
        }
        let out = if keep {
            prow[lc..]
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(k, &v)| (cols[lc + k], v))
                .collect()
        } else {
            Vec::new()
        };
        pivots.push((cols[lc], out));
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    pivots
}

enum Elimination {
    Mod {
        p: u64,
        cols: usize,
        pivots: Vec<(u32, Row<u64>)>,
    },
    Int {
        cols: usize,
        pivots: Vec<(u32, Row<BigInt>)>,
    },
}

impl Elimination {
    fn rank(&self) -> usize {
        match self {
            Elimination::Mod { pivots, .. } => pivots.len(),
            Elimination::Int { pivots, .. } => pivots.len(),
        }
    }

    fn free_columns(&self) -> Vec<usize> {
        let (cols, pivot_cols): (usize, Vec<u32>) = match self {
            Elimination::Mod { cols, pivots, .. } => (*cols, pivots.iter().map(|p| p.0).collect()),
            Elimination::Int { cols, pivots } => (*cols, pivots.iter().map(|p| p.0).collect()),
        };
        let mut is_pivot = vec![false; cols];
        for c in pivot_cols {
            is_pivot[c as usize] = true;
        }
        (0..cols).filter(|&c| !is_pivot[c]).collect()
    }

    fn kernel(&self, limit: usize) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .take(limit)
            .map(|f| self.back_substitute(f))
            .collect()
    }

    /// Kernel vector with a nonzero entry in column `target`, if any exists.
    fn kernel_vector_with(&self, target: usize) -> Option<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| self.back_substitute(f))
            .find(|v| !v[target].is_zero())
            .map(|v| {
                let field = self.field();
                let scale = field.inv(&v[target]).unwrap();
                v.iter().map(|x| field.mul(x, &scale)).collect()
            })
    }

    fn field(&self) -> Field {
        match self {
            Elimination::Mod { p, .. } => Field::Prime(*p),
            Elimination::Int { .. } => Field::Rational,
        }
    }

    /// Kernel vector with `x_free = 1`, zero on other free columns.
    fn back_substitute(&self, free: usize) -> Vec<Scalar> {
        match self {
            Elimination::Mod { p, cols, pivots } => {
                let ops = ModP { p: *p };
                let mut x = vec![0u64; *cols];
                x[free] = 1;
                for (c, row) in pivots.iter().rev() {
                    // pivot entries are normalized to one
                    let mut s = 0u64;
                    for (j, v) in row {
                        if *j != *c && x[*j as usize] != 0 {
                            s = (s + ops.mul(*v, x[*j as usize])) % p;
                        }
                    }
                    x[*c as usize] = if s == 0 { 0 } else { p - s };
                }
                x.into_iter().map(Scalar::Modular).collect()
            }
            Elimination::Int { cols, pivots } => {
                let mut x = vec![BigRational::zero(); *cols];
                x[free] = BigRational::one();
                for (c, row) in pivots.iter().rev() {
                    let mut s = BigRational::zero();
                    let mut pv = BigInt::one();
                    for (j, v) in row {
                        if *j == *c {
                            pv = v.clone();
                        } else if !x[*j as usize].is_zero() {
                            s += &x[*j as usize] * BigRational::from_integer(v.clone());
                        }
                    }
                    x[*c as usize] = -s / BigRational::from_integer(pv);
                }
                x.into_iter()
                    .map(|q| {
                        debug_assert!(!q.denom().is_negative());
                        Scalar::Rational(q)
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    fn random_matrix(field: Field, rows: usize, cols: usize, density: f64, seed: u64) -> SparseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = SparseMatrix::new(rows, cols, field);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(density) {
                    let v: i64 = rng.gen_range(-5..=5);
                    m.add_to(r, c, &field.from_i64(v));
                }
            }
        }
        m
    }

    fn assert_kernel(m: &SparseMatrix, basis: &[Vec<Scalar>]) {
        for v in basis {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            assert!(v.iter().any(|x| !x.is_zero()));
        }
    }

    #[test]
    fn trivial_kernels() {
        let z = SparseMatrix::new(1, 2, Field::Rational);
        assert_eq!(z.nullspace().len(), 2);
        let m = SparseMatrix::from_dense(Field::Rational, &[vec![q(1), q(1)]]);
        assert_eq!(m.nullspace(), vec![vec![q(-1), q(1)]]);
        let mut id = SparseMatrix::new(5, 5, Field::Rational);
        for i in 0..5 {
            id.add_to(i, i, &q(1));
        }
        assert_eq!(id.rank(), 5);
        assert!(id.nullspace().is_empty());
    }

    #[test]
    fn random_wide_prime_field() {
        let f = Field::random_prime(3);
        for seed in 0..5 {
            let m = random_matrix(f, 20, 30, 0.3, seed);
            let basis = m.nullspace();
            assert!(basis.len() >= 10);
            assert_eq!(basis.len() + m.rank(), 30);
            assert_kernel(&m, &basis);
        }
    }

    #[test]
    fn rational_and_prime_ranks_agree() {
        let f = Field::random_prime(11);
        for seed in 0..20 {
            let mq = random_matrix(Field::Rational, 15, 15, 0.4, seed);
            let mp = random_matrix(f, 15, 15, 0.4, seed);
            assert_eq!(mq.rank(), mp.rank(), "seed {seed}");
            assert_eq!(mq.rank(), mq.transpose().rank());
            assert_kernel(&mq, &mq.nullspace());
        }
    }

    #[test]
    fn dense_phase_matches_sparse() {
        // dense enough to trigger the dense completion
        let f = Field::Prime(1_000_003);
        for seed in 0..3 {
            let m = random_matrix(f, 120, 150, 0.5, seed);
            let basis = m.nullspace();
            assert_eq!(basis.len(), 150 - m.rank());
            assert_kernel(&m, &basis);
            assert_eq!(m.rank(), m.transpose().rank());
        }
        let big = Field::Prime(crate::field::GENERIC_PRIME);
        let m = random_matrix(big, 100, 110, 0.5, 9);
        assert_kernel(&m, &m.nullspace());
    }

    #[test]
    fn rank_deficient_structure() {
        // rows 2 and 3 are combinations of rows 0 and 1
        let rows = [
            vec![1, 2, 0, 3],
            vec![0, 1, 1, 1],
            vec![1, 3, 1, 4],
            vec![2, 5, 1, 7],
        ];
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        let m = SparseMatrix::from_dense(Field::Rational, &dense);
        assert_eq!(m.rank(), 2);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        assert_kernel(&m, &basis);
    }

    #[test]
    fn solve_affine() {
        let dense = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let m = SparseMatrix::from_dense(Field::Rational, &dense);
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let sing = SparseMatrix::from_dense(Field::Rational, &[vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert!(sing.solve(&[q(1), q(3)]).is_none());
        assert!(sing.solve(&[q(1), q(2)]).is_some());
    }

    #[test]
    fn triplet_roundtrip() {
        let m = random_matrix(Field::Rational, 6, 7, 0.4, 1);
        let back = SparseMatrix::from_triplets(&m.to_triplets()).unwrap();
        assert_eq!(back, m);
        assert!(SparseMatrix::from_triplets("2 2 q\n5 0 1\n").is_err());
    }
}
