//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. The central routine is
//! [`snf`], a Smith normal form that also records both change-of-basis matrices and
//! their inverses; kernels, images and integer solving are read off from it.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense integer matrix stored in row-major order.
///
/// Empty shapes (`0 × n`, `n × 0`) are legal and stand for trivial groups and maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(
                format!("{} entries for {rows}x{cols}", rows * cols),
                format!("{} entries", data.len()),
            ));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix {
            rows: rows.len(),
            cols: ncols,
            data,
        }
    }

    /// Builds a `rows × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::dims(format!("column of length {rows}"), c.len()));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dims(
                format!("{} rows on the right", self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &IntMatrix,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::dims(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `[self | rhs]`.
    pub fn hconcat(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::dims(
                format!("{} rows", self.rows),
                format!("{} rows", rhs.rows),
            ));
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// `[self ; rhs]`.
    pub fn vconcat(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::dims(
                format!("{} cols", self.cols),
                format!("{} cols", rhs.cols),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(IntMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> IntMatrix {
        let idx: Vec<usize> = idx.into_iter().collect();
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in &idx {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: impl IntoIterator<Item = usize>) -> IntMatrix {
        let idx: Vec<usize> = idx.into_iter().collect();
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Block-diagonal sum `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// `copies` blocks of `self` along the diagonal.
    pub fn block_diagonal(&self, copies: usize) -> IntMatrix {
        let mut out = Self::zeros(self.rows * copies, self.cols * copies);
        for c in 0..copies {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    let x = self.get(i, j);
                    if !x.is_zero() {
                        out.set(c * self.rows + i, c * self.cols + j, x.clone());
                    }
                }
            }
        }
        out
    }

    /// The matrix of `X ↦ X·self` acting on `m × rows` matrices flattened column-major.
    ///
    /// With `self` of shape `a × b`, the result is `(m·b) × (m·a)`, i.e. `selfᵀ ⊗ I_m`.
    pub fn right_action(&self, m: usize) -> IntMatrix {
        let (a, b) = (self.rows, self.cols);
        let mut out = Self::zeros(m * b, m * a);
        for k in 0..a {
            for j in 0..b {
                let q = self.get(k, j);
                if q.is_zero() {
                    continue;
                }
                for i in 0..m {
                    out.set(j * m + i, k * m + i, q.clone());
                }
            }
        }
        out
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

    /// row[target] += c * row[src]
    fn add_row_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = c * s;
                self.data[target * self.cols + j] += delta;
            }
        }
    }

    /// col[target] += c * col[src]
    fn add_col_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = c * s;
                self.data[i * self.cols + target] += delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let data = raw
            .data
            .iter()
            .map(|s| s.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        IntMatrix::new(raw.rows, raw.cols, data).map_err(D::Error::custom)
    }
}

/// Smith decomposition `U·A·V = D`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// The nonzero diagonal entries `d₁ | d₂ | … | d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, target: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(target, src, c);
        self.u.add_row_multiple(target, src, c);
        self.u_inv.add_col_multiple(src, target, &-c);
    }

    fn add_col(&mut self, target: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(target, src, c);
        self.v.add_col_multiple(target, src, c);
        self.v_inv.add_row_multiple(src, target, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block starting at (t, t).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if x.is_one() || (-x).is_one() {
                    return Some((i, j));
                }
                if best.is_none_or(|(_, _, b)| x.abs() < b.abs()) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` outside the pivot. Returns false if a remainder
    /// survived and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows {
            if self.a.get(i, t).is_zero() {
                continue;
            }
            let q = self.a.get(i, t) / self.a.get(t, t);
            self.add_row(i, t, &-q);
            if !self.a.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols {
            if self.a.get(t, j).is_zero() {
                continue;
            }
            let q = self.a.get(t, j) / self.a.get(t, t);
            self.add_col(j, t, &-q);
            if !self.a.get(t, j).is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn min_on_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut val = self.a.get(t, t).abs();
        for i in t + 1..self.a.rows {
            let x = self.a.get(i, t);
            if !x.is_zero() && x.abs() < val {
                val = x.abs();
                best = (i, t);
            }
        }
        for j in t + 1..self.a.cols {
            let x = self.a.get(t, j);
            if !x.is_zero() && x.abs() < val {
                val = x.abs();
                best = (t, j);
            }
        }
        best
    }

    fn non_divisible(&self, t: usize) -> Option<usize> {
        let p = self.a.get(t, t);
        if p.is_one() || (-p).is_one() {
            return None;
        }
        for i in t + 1..self.a.rows {
            for j in t + 1..self.a.cols {
                let x = self.a.get(i, j);
                if !x.is_zero() && !x.is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form: returns unimodular `U`, `V` with `U·A·V = D`, where `D` is diagonal
/// with nonnegative entries `d₁ | d₂ | …` and zero diagonal entries trailing.
pub fn snf(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = r.find_pivot(t) else {
            break;
        };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            if !r.clear_cross(t) {
                let (pi, pj) = r.min_on_cross(t);
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            match r.non_divisible(t) {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a.get(t, t).is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    Smith {
        d: r.a,
        u: r.u,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank: t,
    }
}

/// Column-style reduced Hermite normal form of the lattice spanned by the columns.
///
/// Zero columns are dropped. Each remaining column has a positive leading entry (its
/// first nonzero row), leading rows strictly increase, and entries of earlier columns
/// in a leading row are reduced into `[0, pivot)`. The result depends only on the lattice.
pub fn hermite_columns(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let mut pc = 0;
    for r in 0..m.rows {
        if pc == m.cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in pc..m.cols {
                let x = m.get(r, j);
                if !x.is_zero() && best.is_none_or(|b| x.abs() < m.get(r, b).abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            m.swap_cols(pc, b);
            let mut done = true;
            for j in pc + 1..m.cols {
                if m.get(r, j).is_zero() {
                    continue;
                }
                let q = m.get(r, j) / m.get(r, pc);
                m.add_col_multiple(j, pc, &-q);
                if !m.get(r, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pc >= m.cols || m.get(r, pc).is_zero() {
            continue;
        }
        if m.get(r, pc).is_negative() {
            m.negate_col(pc);
        }
        for j in 0..pc {
            let q = m.get(r, j).div_floor(m.get(r, pc));
            m.add_col_multiple(j, pc, &-q);
        }
        pc += 1;
    }
    m.select_columns(0..pc)
}

/// Basis of the integer null space `{x : A·x = 0}` as columns, in Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = snf(a);
    hermite_columns(&s.v.select_columns(s.rank..a.cols))
}

/// Basis of the column lattice of `A`, in Hermite form.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    hermite_columns(a)
}

pub fn rank(a: &IntMatrix) -> usize {
    snf(a).rank
}

/// Integer solution of `A·x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows {
        return Err(Error::dims(
            format!("right-hand side of length {}", a.rows),
            b.len(),
        ));
    }
    Ok(solve_with(&snf(a), b))
}

/// Solves against a precomputed Smith decomposition of `A`.
pub fn solve_with(s: &Smith, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); s.v.rows];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ci.div_rem(s.d.get(i, i));
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Greatest common divisor of a slice, zero for an empty or all-zero slice.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_smith(a: &IntMatrix, s: &Smith) {
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let s = snf(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.u, a);
        assert_eq!(s.v, a);
    }

    #[test]
    fn snf_zero() {
        let a = IntMatrix::zeros(2, 3);
        let s = snf(&a);
        assert_eq!(s.d, IntMatrix::zeros(2, 3));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn snf_two_by_two() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let s = snf(&a);
        check_smith(&a, &s);
        assert_eq!(s.invariant_factors(), to_bigints(&[2, 4]));
    }

    #[test]
    fn snf_empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zeros(r, c);
            let s = snf(&a);
            check_smith(&a, &s);
            assert_eq!(s.rank, 0);
        }
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&a);
        check_smith(&a, &s);
        assert_eq!(s.invariant_factors(), to_bigints(&[1, 6]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).cols(), 0);
        assert_eq!(kernel_basis(&m(&[vec![2, -1]])), m(&[vec![1], vec![2]]));
        assert_eq!(kernel_basis(&m(&[vec![0, 0]])), IntMatrix::identity(2));
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(
            solve(&id, &to_bigints(&[3, 5])).unwrap(),
            Some(to_bigints(&[3, 5]))
        );
        assert_eq!(solve(&m(&[vec![2]]), &to_bigints(&[3])).unwrap(), None);
        let a = m(&[vec![2, 3]]);
        let x = solve(&a, &to_bigints(&[1])).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), to_bigints(&[1]));
        assert!(matches!(
            solve(&id, &to_bigints(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = m(&[vec![2, 4, 6], vec![1, 3, 5]]);
        let b = m(&[vec![4, 2], vec![3, 1]]);
        assert_eq!(hermite_columns(&a), hermite_columns(&b));
    }

    #[test]
    fn right_action_matches_product() {
        let x = m(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let q = m(&[vec![1, 0], vec![2, -1], vec![0, 3]]);
        let flat = |a: &IntMatrix| -> Vec<BigInt> { a.columns().flatten().collect() };
        assert_eq!(q.right_action(2).mul_vec(&flat(&x)), flat(&(&x * &q)));
    }

    #[test]
    fn json_round_trip_uses_strings() {
        let a = m(&[vec![1, -2], vec![3, 4]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"data":["1","-2","3","4"]}"#);
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), a);
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":2,"cols":2,"data":["1"]}"#).is_err());
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":1,"cols":1,"data":["x"]}"#).is_err());
    }
}
