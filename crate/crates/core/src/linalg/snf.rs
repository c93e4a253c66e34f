//! Smith normal form with both transforms.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lattice::IntMat;
use super::rat::Int;

#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariants(&self) -> Vec<Int> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

fn ident(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

/// `U·M·V = D`, `U`, `V` unimodular, `D` diagonal with `d_i | d_{i+1}`.
pub fn snf(m: &[Vec<Int>], ncols: usize) -> Smith {
    let rows = m.len();
    let mut d: IntMat = m.to_vec();
    let mut u = ident(rows);
    let mut v = ident(ncols);

    for t in 0..rows.min(ncols) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..ncols {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(u, d, v);
            };
            d.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..ncols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match offending {
                Some(i) => {
                    row_sub(&mut d, t, i, &-Int::one());
                    row_sub(&mut u, t, i, &-Int::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMat, d: IntMat, v: IntMat) -> Smith {
    Smith { u, d, v }
}

fn row_sub(m: &mut IntMat, i: usize, j: usize, q: &Int) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_sub(m: &mut IntMat, i: usize, j: usize, q: &Int) {
    for r in m.iter_mut() {
        if !r[j].is_zero() {
            let y = r[j].clone();
            r[i] -= q * y;
        }
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    if a != b {
        for r in m.iter_mut() {
            r.swap(a, b);
        }
    }
}

pub fn int_matmul(a: &[Vec<Int>], b: &[Vec<Int>], bcols: usize) -> IntMat {
    a.iter()
        .map(|r| {
            (0..bcols)
                .map(|j| r.iter().zip(b).fold(Int::zero(), |acc, (x, br)| acc + x * &br[j]))
                .collect()
        })
        .collect()
}
