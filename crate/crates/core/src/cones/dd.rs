//! Double description for pointed cones `{z ∈ Q^r : A z ≥ 0}`.
//!
//! Starts from the simplicial cone cut out by `r` independent rows, then adds
//! the remaining rows one at a time, keeping zero sets as bitsets and using
//! the combinatorial adjacency test.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::field;
use crate::linalg::rat::{from_int, primitive, primitive_int};
use crate::linalg::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Self) -> Self {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

fn idot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

/// Extreme rays (primitive integer vectors) of `{z : A z ≥ 0}`.
///
/// Fails when `A` does not have full column rank, i.e. when the cone has a
/// lineality space.
pub fn extreme_rays(a: &[Vec<Int>], r: usize) -> Result<Vec<Vec<Int>>> {
    if r == 0 {
        return Ok(Vec::new());
    }
    let m = a.len();
    let rows_q: Vec<Vec<Rat>> = a.iter().map(|row| row.iter().map(from_int).collect()).collect();

    // greedy choice of r independent rows
    let mut basis_rows = Vec::new();
    let mut acc: Vec<Vec<Rat>> = Vec::new();
    for (i, row) in rows_q.iter().enumerate() {
        acc.push(row.clone());
        if field::rank(&acc, r) == basis_rows.len() + 1 {
            basis_rows.push(i);
            if basis_rows.len() == r {
                break;
            }
        } else {
            acc.pop();
        }
    }
    if basis_rows.len() < r {
        return Err(Error::InvariantViolation("cone has a lineality space".into()));
    }

    // columns of A_B^{-1}
    let ab = crate::linalg::QMat::from_rows(basis_rows.iter().map(|&i| rows_q[i].clone()).collect());
    let inv = ab.inverse().expect("independent rows");
    let mut rays: Vec<(Vec<Int>, Bits)> = (0..r)
        .map(|j| {
            let v = primitive(&inv.col(j));
            let mut z = Bits::new(m);
            for (k, &bi) in basis_rows.iter().enumerate() {
                if k != j {
                    z.set(bi);
                }
            }
            (v, z)
        })
        .collect();

    let mut done = vec![false; m];
    for &b in &basis_rows {
        done[b] = true;
    }
    for i in 0..m {
        if done[i] {
            continue;
        }
        done[i] = true;
        let row = &a[i];
        let vals: Vec<Int> = rays.iter().map(|(v, _)| idot(row, v)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        if neg.is_empty() {
            for (k, (_, z)) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    z.set(i);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<Int>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if (common.count() as usize) + 2 < r {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|w| w == p || w == q || !common.subset_of(&rays[w].1));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (&vals[p], &vals[q]);
                let comb: Vec<Int> = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(x, y)| vp * x - vq * y)
                    .collect();
                let mut z = common;
                z.set(i);
                next.push((primitive_int(comb), z));
            }
        }
        for (k, (v, z)) in rays.into_iter().enumerate() {
            if vals[k].is_positive() {
                next.push((v, z));
            } else if vals[k].is_zero() {
                let mut z = z;
                z.set(i);
                next.push((v, z));
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|(v, _)| v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
