//! Dense matrices over an exact field.
//!
//! Matrices act on column vectors. Products skip zero entries of the left
//! factor, which matters for the mostly-zero endomorphisms of `g`.

use std::fmt;

use super::field::{self, Field};
use super::rat::{format_rat, Rat};
use super::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<T>>,
}

pub type QMat = Matrix<Rat>;

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![T::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = T::one();
        }
        m
    }

    /// Panics on ragged input; callers validate shapes at the I/O boundary.
    pub fn from_rows(data: Vec<Vec<T>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows, cols, data }
    }

    pub fn with_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn rows(&self) -> &[Vec<T>] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i]
    }
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i][j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i][j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(T::is_zero))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.data[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.data[i][j] = out.data[i][j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        self.data
            .iter()
            .map(|r| {
                r.iter().zip(v).fold(T::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * b.clone()
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| s.clone() * a.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn rank(&self) -> usize {
        field::rank(&self.data, self.cols)
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        field::det(self.data.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug: Vec<Vec<T>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
                r
            })
            .collect();
        let red = field::rref(aug, 2 * n);
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_rows(red.rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Smallest `p ≤ n` with `self^p = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<u32> {
        assert!(self.is_square());
        let mut p = Self::identity(self.rows);
        for k in 0..=self.rows as u32 {
            if p.is_zero() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    pub fn kernel(&self) -> Subspace<T> {
        Subspace::from_basis_unchecked(self.cols, field::kernel(&self.data, self.cols))
    }

    pub fn image(&self) -> Subspace<T> {
        Subspace::span(self.rows, &self.columns())
    }

    /// Some `x` with `self·x = b`.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        field::solve(&self.data, self.cols, b)
    }

    /// `exp(self)` by the finite series; `None` if not nilpotent.
    pub fn exp_nilpotent(&self) -> Option<Self> {
        let idx = self.nilpotency_index()?;
        let mut acc = Self::identity(self.rows);
        let mut term = Self::identity(self.rows);
        let mut fact = T::one();
        for k in 1..idx {
            term = term.mul(self);
            fact = fact * small::<T>(k);
            acc = acc.add(&term.scale(&(T::one() / fact.clone())));
        }
        Some(acc)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let data = a
            .data
            .iter()
            .zip(&b.data)
            .chain(c.data.iter().zip(&d.data))
            .map(|(l, r)| l.iter().chain(r).cloned().collect())
            .collect();
        Self { rows: a.rows + c.rows, cols: a.cols + b.cols, data }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_rows(self.data[rows].iter().map(|r| r[cols.clone()].to_vec()).collect())
    }
}

/// The field element `k·1`.
pub fn small<T: Field>(k: u32) -> T {
    (0..k).fold(T::zero(), |acc, _| acc + T::one())
}

impl QMat {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| super::rat::int_vec(r)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|r| super::rat::is_integral(r))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.data.iter().map(|r| r.iter().map(format_rat).collect()).collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.data).finish()
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
