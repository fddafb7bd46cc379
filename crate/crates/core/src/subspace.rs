//! Canonical bases for linear spaces of vectors and matrices.
//!
//! Matrices are vectorized row-major; a space is stored as the reduced row
//! echelon basis of its vectorized members, so equal spaces have identical
//! stored bases.

use crate::error::{mismatch, Error, Result};
use crate::exact_linalg::{Field, Fp, Mat, Rational};

/// Subspace of `F^len` in reduced row echelon form.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorSpace<F: Field = Rational> {
    len: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> VectorSpace<F> {
    pub fn zero(len: usize) -> Self {
        VectorSpace {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::zero(len);
        for i in 0..len {
            let mut v = vec![F::zero(); len];
            v[i] = F::one();
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I>(len: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<F>>,
    {
        let mut s = Self::zero(len);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Length of the ambient vectors.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after reduction against the basis; zero iff `v` is in
    /// the space.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = std::mem::replace(x, F::zero()) - &(c.clone() * y);
                }
            }
        }
        r
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.reduce(v).iter().all(F::is_zero) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        v.len() == self.len && self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<F>) -> Result<bool> {
        if v.len() != self.len {
            return Err(mismatch(self.len, v.len()));
        }
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = std::mem::replace(x, F::zero()) * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = std::mem::replace(x, F::zero()) - &(c.clone() * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        Ok(true)
    }

    /// The basis followed by the standard unit vectors that complete it.
    pub fn extend_to_basis(&self) -> Vec<Vec<F>> {
        let mut out = self.rows.clone();
        let mut span = self.clone();
        for i in 0..self.len {
            let mut e = vec![F::zero(); self.len];
            e[i] = F::one();
            if span.insert(e.clone()).expect("sized") {
                out.push(e);
            }
        }
        out
    }

    /// Smallest subspace containing this one and closed under every `op`.
    pub fn invariant_closure(&self, ops: &[Mat<F>]) -> Self {
        let mut span = self.clone();
        let mut frontier: Vec<Vec<F>> = self.rows.clone();
        while let Some(w) = frontier.pop() {
            for a in ops {
                let image = a.mul_vec(&w);
                if span.insert(image.clone()).expect("sized") {
                    frontier.push(image);
                }
            }
        }
        span
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(mismatch(self.len, other.len));
        }
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone())?;
        }
        Ok(s)
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(mismatch(self.len, other.len));
        }
        let n = self.len;
        let mut joint = VectorSpace::zero(2 * n);
        for u in &self.rows {
            joint.insert(u.iter().chain(u).cloned().collect())?;
        }
        for w in &other.rows {
            joint.insert(
                w.iter()
                    .cloned()
                    .chain(std::iter::repeat_with(F::zero).take(n))
                    .collect(),
            )?;
        }
        let tail = joint
            .rows
            .iter()
            .zip(&joint.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(row, _)| row[n..].to_vec());
        VectorSpace::span(n, tail)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<VectorSpace<G>> {
        VectorSpace::span(
            self.len,
            self.rows.iter().map(|r| r.iter().map(&f).collect()),
        )
    }
}

/// Linear space of `rows x cols` matrices.
#[derive(Clone, PartialEq, Debug)]
pub struct RectSubspace<F: Field = Rational> {
    rows: usize,
    cols: usize,
    space: VectorSpace<F>,
}

impl<F: Field> RectSubspace<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RectSubspace {
            rows,
            cols,
            space: VectorSpace::zero(rows * cols),
        }
    }

    pub fn span(rows: usize, cols: usize, mats: &[Mat<F>]) -> Result<Self> {
        for m in mats {
            if m.rows() != rows || m.cols() != cols {
                return Err(mismatch(
                    format!("{rows}x{cols}"),
                    format!("{}x{}", m.rows(), m.cols()),
                ));
            }
        }
        Ok(RectSubspace {
            rows,
            cols,
            space: VectorSpace::span(rows * cols, mats.iter().map(|m| m.entries().to_vec()))?,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn vector_space(&self) -> &VectorSpace<F> {
        &self.space
    }

    pub fn basis(&self) -> Vec<Mat<F>> {
        self.space
            .basis()
            .iter()
            .map(|v| Mat::from_vec(self.rows, self.cols, v.clone()).expect("sized"))
            .collect()
    }

    pub fn contains(&self, m: &Mat<F>) -> bool {
        m.rows() == self.rows && m.cols() == self.cols && self.space.contains(m.entries())
    }
}

/// Linear space of `n x n` matrices with a canonical basis.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixSubspace<F: Field = Rational> {
    n: usize,
    space: VectorSpace<F>,
    basis: Vec<Mat<F>>,
}

impl<F: Field> MatrixSubspace<F> {
    fn from_space(n: usize, space: VectorSpace<F>) -> Self {
        let basis = space
            .basis()
            .iter()
            .map(|v| Mat::from_vec(n, n, v.clone()).expect("sized"))
            .collect();
        MatrixSubspace { n, space, basis }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_space(n, VectorSpace::zero(n * n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_space(n, VectorSpace::full(n * n))
    }

    /// Span of square matrices of side `n`.
    pub fn span(n: usize, mats: &[Mat<F>]) -> Result<Self> {
        for m in mats {
            if m.rows() != n || m.cols() != n {
                return Err(mismatch(
                    format!("{n}x{n}"),
                    format!("{}x{}", m.rows(), m.cols()),
                ));
            }
        }
        let space = VectorSpace::span(n * n, mats.iter().map(|m| m.entries().to_vec()))?;
        Ok(Self::from_space(n, space))
    }

    /// Span of the matrix units `E_ij` for the given zero-based positions.
    pub fn coordinate(n: usize, positions: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mats: Vec<_> = positions
            .into_iter()
            .map(|(i, j)| Mat::unit(n, n, i, j))
            .collect();
        Self::span(n, &mats).expect("units are n x n")
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Mat<F>] {
        &self.basis
    }

    pub fn vector_space(&self) -> &VectorSpace<F> {
        &self.space
    }

    pub fn contains(&self, m: &Mat<F>) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.space.contains(m.entries())
    }

    /// Coordinates of `m` in the canonical basis.
    pub fn coordinates(&self, m: &Mat<F>) -> Option<Vec<F>> {
        if m.rows() != self.n || m.cols() != self.n {
            return None;
        }
        self.space.coordinates(m.entries())
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, coeffs: &[F]) -> Mat<F> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count");
        let mut acc = vec![F::zero(); self.n * self.n];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in acc.iter_mut().zip(b.entries()) {
                if !y.is_zero() {
                    *x = std::mem::replace(x, F::zero()) + &(c.clone() * y);
                }
            }
        }
        Mat::from_vec(self.n, self.n, acc).expect("sized")
    }

    /// `span{P A P^-1}`.
    pub fn conjugate(&self, p: &Mat<F>) -> Result<Self> {
        if p.rows() != self.n || p.cols() != self.n {
            return Err(mismatch(
                format!("{0}x{0}", self.n),
                format!("{}x{}", p.rows(), p.cols()),
            ));
        }
        let p_inv = p.inverse().ok_or(Error::Singular)?;
        self.conjugate_with_inverse(p, &p_inv)
    }

    /// `span{P A Q}` where the caller guarantees `Q = P^-1`.
    pub fn conjugate_with_inverse(&self, p: &Mat<F>, p_inv: &Mat<F>) -> Result<Self> {
        let mats: Vec<_> = self.basis.iter().map(|a| &(p * a) * p_inv).collect();
        Self::span(self.n, &mats)
    }

    pub fn transpose_space(&self) -> Self {
        let mats: Vec<_> = self.basis.iter().map(Mat::transpose).collect();
        Self::span(self.n, &mats).expect("same side")
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(mismatch(self.n, other.n));
        }
        Ok(Self::from_space(self.n, self.space.sum(&other.space)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(mismatch(self.n, other.n));
        }
        Ok(Self::from_space(
            self.n,
            self.space.intersect(&other.space)?,
        ))
    }

    /// Closed under products of basis pairs, in both orders. The identity is
    /// not required.
    pub fn is_algebra(&self) -> bool {
        self.first_product_outside().is_none()
    }

    /// First ordered basis pair whose product leaves the space.
    pub fn first_product_outside(&self) -> Option<(usize, usize)> {
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                if !self.contains(&(a * b)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Closed under `A∘B = AB + BA` on basis pairs.
    pub fn is_jordan_closed(&self) -> bool {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i..] {
                if !self.contains(&(&(a * b) + &(b * a))) {
                    return false;
                }
            }
        }
        true
    }

    /// `V + span{I}`.
    pub fn adjoin_identity(&self) -> Self {
        let mut space = self.space.clone();
        space
            .insert(Mat::<F>::identity(self.n).into_entries())
            .expect("sized");
        Self::from_space(self.n, space)
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Mat::identity(self.n))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<MatrixSubspace<G>> {
        Ok(MatrixSubspace::from_space(self.n, self.space.map(f)?))
    }
}

impl MatrixSubspace<Rational> {
    /// Basis reduced modulo the session prime; `None` if a denominator
    /// vanishes. The reduced list spans the reduced space but is not
    /// re-canonicalized.
    pub fn basis_fp(&self) -> Option<Vec<Mat<Fp>>> {
        self.basis.iter().map(Mat::to_fp).collect()
    }
}
