//! Subspaces of `K^n` in canonical reduced-echelon form.
//!
//! Two subspaces are equal iff their stored bases are equal, so `==` is
//! mathematical equality.

use super::field::{self, Field};
use super::matrix::Matrix;
use super::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<T = Rat> {
    ambient: usize,
    basis: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Matrix::<T>::identity(ambient).rows())
    }

    pub fn span(ambient: usize, vecs: &[Vec<T>]) -> Self {
        debug_assert!(vecs.iter().all(|v| v.len() == ambient));
        let red = field::rref(vecs.to_vec(), ambient);
        Self { ambient, basis: red.rows, pivots: red.pivots }
    }

    /// The vectors need only be independent; they are re-echelonized.
    pub(crate) fn from_basis_unchecked(ambient: usize, vecs: Vec<Vec<T>>) -> Self {
        Self::span(ambient, &vecs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v ∉ self`.
    pub fn coords(&self, v: &[T]) -> Option<Vec<T>> {
        let c: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - ci.clone() * y.clone();
                }
            }
        }
        r.iter().all(T::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &v)
    }

    /// Rows of a matrix whose kernel is exactly `self`.
    pub fn annihilator(&self) -> Vec<Vec<T>> {
        field::kernel(&self.basis, self.ambient)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut ann = self.annihilator();
        ann.extend(other.annihilator());
        Self::span(self.ambient, &field::kernel(&ann, self.ambient))
    }

    pub fn image_under(&self, m: &Matrix<T>) -> Self {
        let imgs: Vec<Vec<T>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Self::span(m.nrows(), &imgs)
    }

    /// `{v : m·v ∈ self}`.
    pub fn preimage(&self, m: &Matrix<T>) -> Self {
        let ann = Matrix::from_rows(self.annihilator());
        if ann.nrows() == 0 {
            return Self::full(m.ncols());
        }
        ann.mul(m).kernel()
    }

    /// Some complement spanned by standard basis vectors.
    pub fn standard_complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }
}
