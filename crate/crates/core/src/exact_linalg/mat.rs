use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Fp, Rational};
use crate::error::{mismatch, Error, Result};
use crate::rng;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Mat<F: Field = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Matrix unit with a one at `(i, j)` (zero-based).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, F::one());
        m
    }

    pub fn diag(entries: &[F]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(mismatch(rows * cols, data.len()));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(mismatch(c, bad.len()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| F::from_i64(v)).collect())
            .collect();
        Self::from_rows(data).expect("ragged integer literal")
    }

    /// Builds a matrix with the given columns.
    pub fn from_columns(n_rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(n_rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n_rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major entries; this is also the vectorization order used by
    /// subspaces of matrices.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<F> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<F> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            F::zero()
        } else {
            self.get(0, 0).clone()
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let ok = if i == j {
                    *self.get(i, j) == c
                } else {
                    self.get(i, j).is_zero()
                };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * c).collect(),
        }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(mismatch(
                format!("{} rows", self.cols),
                format!("{} rows", other.rows),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    let prod = a.clone() * b;
                    out.data[idx] = std::mem::replace(&mut out.data[idx], F::zero()) + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(F, &F) -> F) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(mismatch(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b))
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &F) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i).clone() - c;
            m.set(i, i, v);
        }
        m
    }

    pub fn rank(&self) -> usize {
        F::rank_of(self)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        (m, pivots)
    }

    /// Basis of the right null space, one column vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|j| self.column(j)).collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let pivots = rref_in_place(&mut aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = m.get(r, c).clone() * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(r, j).clone() - &(f.clone() * m.get(c, j));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// Entries strictly below the diagonal, zeros elsewhere.
    pub fn strictly_lower(&self) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..i.min(self.cols) {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Rectangular block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    /// Reversal permutation matrix `J` with ones on the anti-diagonal.
    pub fn reversal(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, F::one());
        }
        m
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Mat<Rational> {
    /// Entrywise reduction modulo the session prime.
    pub fn to_fp(&self) -> Option<Mat<Fp>> {
        let data = self
            .data
            .iter()
            .map(Fp::from_rational)
            .collect::<Option<Vec<_>>>()?;
        Some(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl<F: Field> Mul for &Mat<F> {
    type Output = Mat<F>;
    fn mul(self, rhs: &Mat<F>) -> Mat<F> {
        self.checked_mul(rhs).expect("matrix product dimensions")
    }
}

impl<F: Field> Add for &Mat<F> {
    type Output = Mat<F>;
    fn add(self, rhs: &Mat<F>) -> Mat<F> {
        self.checked_add(rhs).expect("matrix sum dimensions")
    }
}

impl<F: Field> Sub for &Mat<F> {
    type Output = Mat<F>;
    fn sub(self, rhs: &Mat<F>) -> Mat<F> {
        self.checked_sub(rhs).expect("matrix difference dimensions")
    }
}

impl<F: Field> Neg for &Mat<F> {
    type Output = Mat<F>;
    fn neg(self) -> Mat<F> {
        self.map(|v| -v.clone())
    }
}

/// Gauss-Jordan elimination in place; pivots are the first nonzero entry of
/// each column scanning rows downward. Returns the pivot columns.
pub(crate) fn rref_in_place<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for j in c..cols {
            let v = m.get(r, j).clone() * &inv;
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let rv = m.get(r, j);
                if rv.is_zero() {
                    continue;
                }
                let v = m.get(i, j).clone() - &(f.clone() * rv);
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn gaussian_rank<F: Field>(m: &Mat<F>) -> usize {
    let mut work = m.clone();
    let (rows, cols) = (work.rows, work.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !work.get(i, c).is_zero()) else {
            continue;
        };
        work.swap_rows(p, r);
        let inv = work.get(r, c).inv().expect("nonzero pivot");
        for i in r + 1..rows {
            let f = work.get(i, c).clone() * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = work.get(i, j).clone() - &(f.clone() * work.get(r, j));
                work.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Clears denominators row by row so every row is an integer vector.
fn integer_rows(m: &Mat<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination over the integers. Pivot: first
/// nonzero entry of the column, lowest row index first.
pub(crate) fn bareiss_rank(m: &Mat<Rational>) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

/// Bareiss determinant of a square rational matrix (denominators cleared
/// first and divided back out).
pub fn bareiss_determinant(m: &Mat<Rational>) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    for i in 0..n {
        let lcm = m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        scale *= lcm;
    }
    let mut a = integer_rows(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n - 1 {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        let (head, tail) = a.split_at_mut(c + 1);
        let pivot_row = &head[c];
        for row in tail.iter_mut() {
            for j in c + 1..n {
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
    }
    let det = sign * &a[n - 1][n - 1];
    Ok(Rational::new(det, scale))
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    m.rank()
}

pub fn kernel_basis<F: Field>(m: &Mat<F>) -> Vec<Vec<F>> {
    m.kernel_basis()
}

/// `AB - BA`.
pub fn commutator<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Result<Mat<F>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if a.rows != b.rows || a.cols != b.cols {
        return Err(mismatch(
            format!("{}x{}", a.rows, a.cols),
            format!("{}x{}", b.rows, b.cols),
        ));
    }
    (a * b).checked_sub(&(b * a))
}

/// Exact discriminant of the characteristic polynomial. Nonzero iff the
/// matrix has pairwise distinct eigenvalues over the algebraic closure.
pub fn charpoly_discriminant<F: Field>(m: &Mat<F>) -> Result<F> {
    F::charpoly_discriminant_of(m)
}

/// Integer matrix with entries uniform in `[-entry_bound, entry_bound]`,
/// reproducible from `seed`.
pub fn random_matrix(rows: usize, cols: usize, entry_bound: u64, seed: u64) -> Mat<Rational> {
    let mut g = rng::seeded(seed);
    random_integer_matrix(&mut g, rows, cols, entry_bound)
}

pub fn random_integer_matrix(
    g: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    entry_bound: u64,
) -> Mat<Rational> {
    let b = entry_bound.min(i64::MAX as u64) as i64;
    let data = (0..rows * cols)
        .map(|_| Rational::from_i64(if b == 0 { 0 } else { g.gen_range(-b..=b) }))
        .collect();
    Mat { rows, cols, data }
}

/// Random invertible integer matrix: a product of unit lower and unit upper
/// triangular factors with entries in `[-entry_bound, entry_bound]`, so the
/// determinant is 1.
pub fn random_unimodular(g: &mut ChaCha8Rng, n: usize, entry_bound: u64) -> Mat<Rational> {
    let b = entry_bound.max(1).min(i64::MAX as u64) as i64;
    let mut lower = Mat::<Rational>::identity(n);
    let mut upper = Mat::<Rational>::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, Rational::from_i64(g.gen_range(-b..=b)));
            upper.set(j, i, Rational::from_i64(g.gen_range(-b..=b)));
        }
    }
    &lower * &upper
}

/// Random invertible integer matrix with independent entries (rejection
/// sampled on the determinant).
pub fn random_invertible(g: &mut ChaCha8Rng, n: usize, entry_bound: u64) -> Mat<Rational> {
    loop {
        let m = random_integer_matrix(g, n, n, entry_bound.max(1));
        if m.rank() == n {
            return m;
        }
    }
}
