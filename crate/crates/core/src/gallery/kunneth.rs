//! Künneth bookkeeping for `H³(Y × Y × E)(2)`.
//!
//! Each factor is a genus-one curve with cohomology basis `1, α, β, ω`
//! (`α ∪ β = ω = -β ∪ α`, `∫ω = 1`). Products carry the Koszul sign
//! `(-1)^{Σ_{a>b} |x_a||y_b|}` and the pairing on `H³` is `∫ x ∪ y`; the Tate
//! twist rescales nothing here. Only `E` degenerates, with `γ_E(β) = β + α`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::hodge::{DegenerationData, HodgeNumbers, Pairing, Symmetry};
use crate::linalg::{QMat, Rat};

/// Hodge numbers of the limit, keyed by weight.
pub type LimitNumbers = BTreeMap<i32, HodgeNumbers>;

#[derive(Clone, Debug)]
pub struct KFactor {
    pub name: String,
    /// Degree of each basis element.
    pub degrees: Vec<usize>,
    /// `product[i][j] = Some((k, sign))` when `b_i ∪ b_j = sign · b_k`.
    pub product: Vec<Vec<Option<(usize, i64)>>>,
    pub top: usize,
    /// Monodromy on the full cohomology, acting on columns.
    pub monodromy: QMat,
    /// Hodge numbers per degree.
    pub hodge: Vec<HodgeNumbers>,
    /// Limit Hodge numbers per degree.
    pub limit: Vec<LimitNumbers>,
}

impl KFactor {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    fn curve(name: &str, monodromy_h1: [[i64; 2]; 2], limit_h1: LimitNumbers) -> Self {
        let mut product = vec![vec![None; 4]; 4];
        for i in 0..4 {
            product[0][i] = Some((i, 1));
            product[i][0] = Some((i, 1));
        }
        product[1][2] = Some((3, 1));
        product[2][1] = Some((3, -1));
        let m = monodromy_h1;
        let monodromy = QMat::from_ints(&[
            &[1, 0, 0, 0],
            &[0, m[0][0], m[0][1], 0],
            &[0, m[1][0], m[1][1], 0],
            &[0, 0, 0, 1],
        ]);
        let pure = |d: usize| -> HodgeNumbers {
            match d {
                0 => BTreeMap::from([((0, 0), 1)]),
                1 => BTreeMap::from([((1, 0), 1), ((0, 1), 1)]),
                _ => BTreeMap::from([((1, 1), 1)]),
            }
        };
        let hodge = (0..3).map(pure).collect();
        let limit = vec![
            BTreeMap::from([(0, pure(0))]),
            limit_h1,
            BTreeMap::from([(2, pure(2))]),
        ];
        Self { name: name.into(), degrees: vec![0, 1, 1, 2], product, top: 3, monodromy, hodge, limit }
    }

    /// `Y = C/Z[i]`, constant.
    pub fn constant_curve(name: &str) -> Self {
        Self::curve(name, [[1, 0], [0, 1]], BTreeMap::from([(1, BTreeMap::from([((1, 0), 1), ((0, 1), 1)]))]))
    }

    /// The nodal degeneration: `α` spans the weight-0 part of the limit.
    pub fn tate_curve(name: &str) -> Self {
        Self::curve(
            name,
            [[1, 1], [0, 1]],
            BTreeMap::from([(0, BTreeMap::from([((0, 0), 1)])), (2, BTreeMap::from([((1, 1), 1)]))]),
        )
    }
}

fn tensor_hodge(a: &HodgeNumbers, b: &HodgeNumbers) -> HodgeNumbers {
    let mut out = HodgeNumbers::new();
    for ((p1, q1), c1) in a {
        for ((p2, q2), c2) in b {
            *out.entry((p1 + p2, q1 + q2)).or_default() += c1 * c2;
        }
    }
    out
}

fn tensor_limit(a: &LimitNumbers, b: &LimitNumbers) -> LimitNumbers {
    let mut out = LimitNumbers::new();
    for (w1, h1) in a {
        for (w2, h2) in b {
            let slot = out.entry(w1 + w2).or_default();
            for (pq, c) in tensor_hodge(h1, h2) {
                *slot.entry(pq).or_default() += c;
            }
        }
    }
    out
}

/// Basis of `H^degree` of the product: index tuples in lexicographic order.
pub fn product_basis(factors: &[KFactor], degree: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for f in factors {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..f.rank()).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out.retain(|t| t.iter().zip(factors).map(|(&i, f)| f.degrees[i]).sum::<usize>() == degree);
    out
}

/// `H^degree(Π factors)(twist)` as degeneration data.
pub fn kunneth(factors: &[KFactor], degree: usize, twist: i32) -> Result<DegenerationData> {
    let basis = product_basis(factors, degree);
    let n = basis.len();
    let mut gram = QMat::zeros(n, n);
    for (u, x) in basis.iter().enumerate() {
        for (v, y) in basis.iter().enumerate() {
            let mut sign = 1i64;
            let mut ok = true;
            for (fi, f) in factors.iter().enumerate() {
                match f.product[x[fi]][y[fi]] {
                    Some((k, s)) if k == f.top => sign *= s,
                    _ => ok = false,
                }
            }
            if !ok {
                continue;
            }
            let koszul: usize = (0..factors.len())
                .flat_map(|a| (0..a).map(move |b| (a, b)))
                .map(|(a, b)| factors[a].degrees[x[a]] * factors[b].degrees[y[b]])
                .sum();
            if koszul % 2 == 1 {
                sign = -sign;
            }
            gram.set(u, v, Rat::from_integer(sign.into()));
        }
    }
    let mut gamma = QMat::zeros(n, n);
    for (u, x) in basis.iter().enumerate() {
        for (v, y) in basis.iter().enumerate() {
            let entry = factors
                .iter()
                .enumerate()
                .fold(Rat::from_integer(1.into()), |acc, (fi, f)| acc * f.monodromy.get(x[fi], y[fi]));
            gamma.set(u, v, entry);
        }
    }

    let mut hodge = HodgeNumbers::new();
    let mut limit = LimitNumbers::new();
    for degs in degree_splits(factors, degree) {
        let h = degs
            .iter()
            .zip(factors)
            .fold(BTreeMap::from([((0, 0), 1)]), |acc, (&d, f)| tensor_hodge(&acc, &f.hodge[d]));
        for ((p, q), c) in h {
            *hodge.entry((p - twist, q - twist)).or_default() += c;
        }
        let l = degs
            .iter()
            .zip(factors)
            .fold(BTreeMap::from([(0, BTreeMap::from([((0, 0), 1)]))]), |acc, (&d, f)| {
                tensor_limit(&acc, &f.limit[d])
            });
        for (w, hn) in l {
            let slot = limit.entry(w - 2 * twist).or_default();
            for ((p, q), c) in hn {
                *slot.entry((p - twist, q - twist)).or_default() += c;
            }
        }
    }
    let weight = degree as i32 - 2 * twist;
    let pairing = Pairing::new(gram, Symmetry::for_weight(weight))?;
    DegenerationData::new(pairing, gamma, weight, hodge, Some(limit))
}

fn degree_splits(factors: &[KFactor], degree: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for f in factors {
        let top = *f.degrees.iter().max().unwrap_or(&0);
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=top).map(move |d| {
                    let mut p = p.clone();
                    p.push(d);
                    p
                })
            })
            .collect();
    }
    out.retain(|s| s.iter().sum::<usize>() == degree);
    out
}

pub fn example9_factors() -> Vec<KFactor> {
    vec![KFactor::constant_curve("Y"), KFactor::constant_curve("Y"), KFactor::tate_curve("E")]
}

/// `H' = H³(Y² × E)(2)`.
pub fn example9_data() -> Result<DegenerationData> {
    kunneth(&example9_factors(), 3, 2)
}
