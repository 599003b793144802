//! Arbitrary-precision integer matrices, Bareiss determinants, and Smith
//! normal form with invertible transforms tracked on both sides.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix {
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
            data: rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn row_vec_mul(v: &[BigInt], m: &IntMatrix) -> Result<Vec<BigInt>> {
        if v.len() != m.rows {
            return Err(Error::DimensionMismatch(format!("vec {} * {}x{}", v.len(), m.rows, m.cols)));
        }
        let mut out = vec![BigInt::zero(); m.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                out[j] += vi * m.get(i, j);
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("sub".into()));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Fraction-free Bareiss elimination; every intermediate division is exact.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let a = m.get(k, j).clone();
                            let b = m.get(i, j).clone();
                            m.set(k, j, b);
                            m.set(i, j, a);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    m.set(i, j, &num / &prev);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign < 0 { -d } else { d })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row i += q * row j
    fn row_addmul(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for col in 0..self.cols {
            let add = q * self.get(j, col);
            let v = self.get(i, col) + add;
            self.set(i, col, v);
        }
    }

    /// col i += q * col j
    fn col_addmul(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in 0..self.rows {
            let add = q * self.get(row, j);
            let v = self.get(row, i) + add;
            self.set(row, i, v);
        }
    }

    fn neg_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn neg_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// U * M * V = D with U, V unimodular; inverses are tracked, not recomputed.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries, including any zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero invariant factors d_1 | d_2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Quotient with remainder of minimal absolute value.
fn nearest_div(a: &BigInt, b: &BigInt) -> BigInt {
    let mut q = a / b;
    let r = a - &q * b;
    if r.magnitude() * 2u32 > *b.magnitude() {
        if r.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

struct SnfWork {
    m: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWork {
    fn row_swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_addmul(&mut self, i: usize, j: usize, q: &BigInt) {
        self.m.row_addmul(i, j, q);
        self.u.row_addmul(i, j, q);
        self.u_inv.col_addmul(j, i, &-q);
    }

    fn col_addmul(&mut self, i: usize, j: usize, q: &BigInt) {
        self.m.col_addmul(i, j, q);
        self.v.col_addmul(i, j, q);
        self.v_inv.row_addmul(j, i, &-q);
    }

    fn row_neg(&mut self, i: usize) {
        self.m.neg_row(i);
        self.u.neg_row(i);
        self.u_inv.neg_col(i);
    }

    /// Smallest nonzero |entry| in the trailing submatrix, ties by (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let x = self.m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.magnitude() < self.m.get(bi, bj).magnitude() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    /// Diagonalize the trailing submatrix starting at (from, from).
    fn diagonalize(&mut self, from: usize) {
        let bound = self.m.rows.min(self.m.cols);
        for t in from..bound {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else { return };
                self.row_swap(t, pi);
                self.col_swap(t, pj);
                let mut clean = true;
                for i in t + 1..self.m.rows {
                    if !self.m.get(i, t).is_zero() {
                        let q = nearest_div(self.m.get(i, t), self.m.get(t, t));
                        self.row_addmul(i, t, &-q);
                        if !self.m.get(i, t).is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.m.cols {
                    if !self.m.get(t, j).is_zero() {
                        let q = nearest_div(self.m.get(t, j), self.m.get(t, t));
                        self.col_addmul(j, t, &-q);
                        if !self.m.get(t, j).is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
        }
    }
}

/// Deterministic Smith normal form. Pivot choice is the smallest nonzero
/// absolute value with (row, col) tie-break, so results are reproducible.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut w = SnfWork {
        m: m.clone(),
        u: IntMatrix::identity(m.rows),
        v: IntMatrix::identity(m.cols),
        u_inv: IntMatrix::identity(m.rows),
        v_inv: IntMatrix::identity(m.cols),
    };
    w.diagonalize(0);
    let bound = w.m.rows.min(w.m.cols);
    for i in 0..bound {
        if w.m.get(i, i).is_negative() {
            w.row_neg(i);
        }
    }
    // Repair the divisibility chain: pulling d_{i+1} into column i and
    // re-diagonalizing replaces the pair by (gcd, lcm).
    loop {
        let mut violation = None;
        for i in 0..bound.saturating_sub(1) {
            let a = w.m.get(i, i);
            let b = w.m.get(i + 1, i + 1);
            if !a.is_zero() && !b.is_zero() && !(b % a).is_zero() {
                violation = Some(i);
                break;
            }
        }
        let Some(i) = violation else { break };
        w.col_addmul(i, i + 1, &BigInt::one());
        w.diagonalize(i);
        for k in i..bound {
            if w.m.get(k, k).is_negative() {
                w.row_neg(k);
            }
        }
    }
    debug_assert!(w.u.mul(&w.u_inv).unwrap().is_identity());
    debug_assert!(w.v.mul(&w.v_inv).unwrap().is_identity());
    Snf { d: w.m, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

/// Solve y * B = x over the integers; None when x is not in the row span.
pub fn solve_left(b: &IntMatrix, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if x.len() != b.cols {
        return Err(Error::DimensionMismatch(format!("len {} vs {} cols", x.len(), b.cols)));
    }
    let snf = smith_normal_form(b);
    let w = IntMatrix::row_vec_mul(x, &snf.v)?;
    let bound = b.rows.min(b.cols);
    let mut z = vec![BigInt::zero(); b.rows];
    for (i, wi) in w.iter().enumerate() {
        if i < bound {
            let d = snf.d.get(i, i);
            if d.is_zero() {
                if !wi.is_zero() {
                    return Ok(None);
                }
            } else {
                if !(wi % d).is_zero() {
                    return Ok(None);
                }
                z[i] = wi / d;
            }
        } else if !wi.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(IntMatrix::row_vec_mul(&z, &snf.u)?))
}
