//! Finitely generated subgroups of `Q^n`.
//!
//! A [`ZLattice`] is stored as `(D, H)` with `D` the least positive integer
//! making `D·L` integral and `H` the row Hermite normal form of `D·L`. That
//! pair is unique, so derived equality is lattice equality.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field;
use super::rat::{from_int, lcm_denominators, Int, Rat};

pub type IntMat = Vec<Vec<Int>>;

/// Row-style Hermite form with the unimodular transform: `U·A = [H; 0]`.
///
/// Pivots are positive and entries above a pivot lie in `[0, pivot)`.
/// Returns `(H, U, rank)`; rows `rank..` of `U` span the left kernel of `A`.
pub fn hnf_with_transform(a: &[Vec<Int>], ncols: usize) -> (IntMat, IntMat, usize) {
    let m = a.len();
    let mut h: IntMat = a.to_vec();
    let mut u: IntMat = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    h.truncate(r);
    (h, u, r)
}

pub fn hnf(a: &[Vec<Int>], ncols: usize) -> IntMat {
    hnf_with_transform(a, ncols).0
}

/// `rows[i] -= q · rows[j]`
fn row_axpy(rows: &mut IntMat, i: usize, j: usize, q: &Int) {
    let src = rows[j].clone();
    for (x, y) in rows[i].iter_mut().zip(&src) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(rows: &mut IntMat, i: usize) {
    for x in rows[i].iter_mut() {
        *x = -&*x;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZLattice {
    ambient: usize,
    denom: Int,
    hnf: IntMat,
}

impl ZLattice {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, denom: Int::one(), hnf: Vec::new() }
    }

    /// The standard lattice `Z^n`.
    pub fn standard(ambient: usize) -> Self {
        let rows: Vec<Vec<Rat>> = (0..ambient).map(|i| super::rat::unit_vec(ambient, i)).collect();
        Self::from_generators(ambient, &rows)
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<Rat>]) -> Self {
        let d = gens.iter().fold(Int::one(), |acc, g| acc.lcm(&lcm_denominators(g)));
        let ints: IntMat = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * from_int(&d)).to_integer()).collect())
            .collect();
        Self::from_scaled(ambient, d, &ints)
    }

    fn from_scaled(ambient: usize, d: Int, ints: &[Vec<Int>]) -> Self {
        let mut h = hnf(ints, ambient);
        let content = h.iter().flatten().fold(Int::zero(), |acc, x| acc.gcd(x));
        let g = content.gcd(&d);
        let mut d = d;
        if !g.is_zero() && !g.is_one() {
            for x in h.iter_mut().flatten() {
                *x = &*x / &g;
            }
            d /= &g;
        }
        if h.is_empty() {
            d = Int::one();
        }
        Self { ambient, denom: d, hnf: h }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn rank(&self) -> usize {
        self.hnf.len()
    }
    pub fn denominator(&self) -> &Int {
        &self.denom
    }
    pub fn hnf_rows(&self) -> &[Vec<Int>] {
        &self.hnf
    }

    /// Canonical Z-basis (rows of the Hermite form, divided by `D`).
    pub fn basis(&self) -> Vec<Vec<Rat>> {
        let d = from_int(&self.denom);
        self.hnf
            .iter()
            .map(|r| r.iter().map(|x| from_int(x) / &d).collect())
            .collect()
    }

    /// Coordinates of `v` in [`Self::basis`], or `None` if `v` is outside the Q-span.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let b = self.basis();
        let cols: Vec<Vec<Rat>> = (0..self.ambient)
            .map(|i| b.iter().map(|r| r[i].clone()).collect())
            .collect();
        if b.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        field::solve(&cols, b.len(), v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords(v)
            .is_some_and(|c| c.iter().all(|x| x.denom().is_one()))
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut g = self.basis();
        g.extend(other.basis());
        Self::from_generators(self.ambient, &g)
    }

    /// Intersection via the left kernel of the stacked bases.
    pub fn intersect(&self, other: &Self) -> Self {
        if self.rank() == 0 || other.rank() == 0 {
            return Self::zero(self.ambient);
        }
        let d = self.denom.lcm(&other.denom);
        let fa = &d / &self.denom;
        let fb = &d / &other.denom;
        let a: IntMat = self.hnf.iter().map(|r| r.iter().map(|x| x * &fa).collect()).collect();
        let b: IntMat = other.hnf.iter().map(|r| r.iter().map(|x| x * &fb).collect()).collect();
        let mut stacked = a.clone();
        stacked.extend(b);
        let (_, u, rank) = hnf_with_transform(&stacked, self.ambient);
        let ra = a.len();
        let gens: IntMat = u[rank..]
            .iter()
            .map(|k| {
                (0..self.ambient)
                    .map(|j| (0..ra).fold(Int::zero(), |acc, i| acc + &k[i] * &a[i][j]))
                    .collect()
            })
            .collect();
        Self::from_scaled(self.ambient, d, &gens)
    }

    /// `L ∩ V` for a rational subspace `V`: integer combinations of the basis
    /// killed by every annihilator row of `V`.
    pub fn intersect_subspace(&self, v: &super::subspace::Subspace) -> Self {
        let ann = v.annihilator();
        if ann.is_empty() || self.rank() == 0 {
            return self.clone();
        }
        let basis = self.basis();
        // T[i][k] = <ann_k, b_i>, cleared of denominators
        let t: Vec<Vec<Rat>> = basis
            .iter()
            .map(|b| ann.iter().map(|f| super::rat::dot(f, b)).collect())
            .collect();
        let den = t.iter().fold(Int::one(), |acc, r| acc.lcm(&lcm_denominators(r)));
        let ti: IntMat = t
            .iter()
            .map(|r| r.iter().map(|x| (x * from_int(&den)).to_integer()).collect())
            .collect();
        let (_, u, rank) = hnf_with_transform(&ti, ann.len());
        let gens: Vec<Vec<Rat>> = u[rank..]
            .iter()
            .map(|k| {
                (0..self.ambient)
                    .map(|j| k.iter().zip(&basis).fold(Rat::zero(), |acc, (c, b)| acc + from_int(c) * &b[j]))
                    .collect()
            })
            .collect();
        Self::from_generators(self.ambient, &gens)
    }

    pub fn image_under(&self, m: &super::matrix::QMat) -> Self {
        let imgs: Vec<Vec<Rat>> = self.basis().iter().map(|b| m.mul_vec(b)).collect();
        Self::from_generators(m.nrows(), &imgs)
    }
}
