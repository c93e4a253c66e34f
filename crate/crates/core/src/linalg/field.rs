//! Gaussian elimination over an exact field.
//!
//! The same routines serve `Q` (for everything rational) and the Gaussian
//! rationals `Q(i)` used by the period-point predicates.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

pub trait Field: Clone + PartialEq + Num + Neg<Output = Self> + Debug + Send + Sync {}

impl<T> Field for T where T: Clone + PartialEq + Num + Neg<Output = T> + Debug + Send + Sync {}

/// Reduced row echelon form; only the nonzero rows are kept.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
}

pub fn rref<T: Field>(mut rows: Vec<Vec<T>>, ncols: usize) -> Rref<T> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots }
}

pub fn rank<T: Field>(rows: &[Vec<T>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).pivots.len()
}

/// Basis of `{v : A v = 0}` where `A` is given by its rows.
pub fn kernel<T: Field>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let red = rref(rows.to_vec(), ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &p) in red.rows.iter().zip(&red.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` when the system is inconsistent.
pub fn solve<T: Field>(rows: &[Vec<T>], ncols: usize, b: &[T]) -> Option<Vec<T>> {
    let aug: Vec<Vec<T>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let red = rref(aug, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Determinant by elimination.
pub fn det<T: Field>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d = d * piv.clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / piv.clone();
            for j in c..n {
                let t = f.clone() * m[c][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
    }
    d
}
