//! Increasing filtrations by subspaces, monodromy weight filtrations, and the
//! axiom checker shared by absolute and relative monodromy filtrations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{QMat, Subspace};

use super::nilpotent::NilpotentEndo;

/// Stored by jumps only: `steps[k]` is the value from weight `k` until the
/// next listed key. Below the first key the filtration is zero; the last
/// value is the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filtration {
    ambient: usize,
    steps: BTreeMap<i32, Subspace>,
}

impl Filtration {
    /// Accepts any finite family that is increasing where listed and ends
    /// with the whole space; redundant steps are dropped.
    pub fn new(ambient: usize, steps: BTreeMap<i32, Subspace>) -> Result<Self> {
        let mut prev: Option<&Subspace> = None;
        for (k, s) in &steps {
            if s.ambient_dim() != ambient {
                return Err(Error::InvalidData(format!("step {k} has the wrong ambient dimension")));
            }
            if let Some(p) = prev {
                if !p.is_subspace_of(s) {
                    return Err(Error::InvalidData(format!("filtration decreases at step {k}")));
                }
            }
            prev = Some(s);
        }
        if ambient > 0 && !prev.is_some_and(Subspace::is_full) {
            return Err(Error::InvalidData("filtration is not exhaustive".into()));
        }
        Ok(Self::canonical(ambient, steps))
    }

    fn canonical(ambient: usize, steps: BTreeMap<i32, Subspace>) -> Self {
        let mut out = BTreeMap::new();
        let mut last = Subspace::zero(ambient);
        for (k, s) in steps {
            if s != last {
                last = s.clone();
                out.insert(k, s);
            }
        }
        Self { ambient, steps: out }
    }

    /// `0 = F_{w-1} ⊂ F_w = everything`.
    pub fn single_jump(ambient: usize, w: i32) -> Self {
        Self::canonical(ambient, BTreeMap::from([(w, Subspace::full(ambient))]))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, k: i32) -> Subspace {
        self.steps
            .range(..=k)
            .next_back()
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn jumps(&self) -> impl Iterator<Item = (&i32, &Subspace)> {
        self.steps.iter()
    }

    /// Smallest and largest jump, or `None` for the zero space.
    pub fn range(&self) -> Option<(i32, i32)> {
        Some((*self.steps.keys().next()?, *self.steps.keys().next_back()?))
    }

    pub fn gr_dim(&self, k: i32) -> usize {
        self.get(k).dim() - self.get(k - 1).dim()
    }

    /// `F[m]_j = F_{j+m}`.
    pub fn shift(&self, m: i32) -> Self {
        Self {
            ambient: self.ambient,
            steps: self.steps.iter().map(|(k, s)| (k - m, s.clone())).collect(),
        }
    }

    /// Image under an injective linear map (e.g. an inclusion `H' → H`).
    pub fn push_forward(&self, m: &QMat) -> Self {
        Self::canonical(
            m.nrows(),
            self.steps.iter().map(|(k, s)| (*k, s.image_under(m))).collect(),
        )
    }

    /// Adds a fixed subspace from weight `from` on.
    pub fn plus_from(&self, extra: &Subspace, from: i32) -> Self {
        let mut keys: Vec<i32> = self.steps.keys().copied().collect();
        keys.push(from);
        let steps = keys
            .into_iter()
            .map(|k| {
                let s = self.get(k);
                (k, if k >= from { s.sum(extra) } else { s })
            })
            .collect();
        Self::canonical(self.ambient, steps)
    }

    pub fn is_preserved_by(&self, n: &QMat) -> bool {
        self.steps.values().all(|s| s.image_under(n).is_subspace_of(s))
    }
}

/// `W(N)` centred at `center`:
/// `W_{c+k} = Σ_{j ≥ 0} Ker N^{k+j+1} ∩ Im N^j`.
pub fn monodromy_filtration(n: &NilpotentEndo, center: i32) -> Filtration {
    let m = n.matrix();
    let dim = m.nrows();
    let idx = n.index() as i32;
    let pows: Vec<QMat> = (0..=idx).map(|p| m.pow(p as u32)).collect();
    let kers: Vec<Subspace> = pows.iter().map(QMat::kernel).collect();
    let ims: Vec<Subspace> = pows.iter().map(QMat::image).collect();
    let mut steps = BTreeMap::new();
    for k in -idx..idx {
        let mut acc = Subspace::zero(dim);
        for j in 0..idx {
            if k + j < 0 {
                continue;
            }
            // N^p = 0 once p ≥ idx
            let p = (k + j + 1).min(idx);
            acc = acc.sum(&kers[p as usize].intersect(&ims[j as usize]));
        }
        steps.insert(center + k, acc);
    }
    steps.insert(center + idx.max(0), Subspace::full(dim));
    let f = Filtration::canonical(dim, steps);
    debug_assert!(check_monodromy(m, &f, center).is_ok());
    f
}

pub fn check_monodromy(n: &QMat, f: &Filtration, center: i32) -> std::result::Result<(), String> {
    check_relative(n, f, &Filtration::single_jump(n.nrows(), center))
}

/// Verifies the two defining axioms of `M = M(N, W)`:
/// `N M_j ⊆ M_{j-2}`, and on every `gr^W_k`
/// `N^l : gr^M_{k+l} → gr^M_{k-l}` is an isomorphism. Returns a description
/// of the first violation.
pub fn check_relative(n: &QMat, m: &Filtration, w: &Filtration) -> std::result::Result<(), String> {
    let dim = n.nrows();
    if !w.is_preserved_by(n) {
        return Err("N does not preserve W".into());
    }
    let (Some((mlo, mhi)), Some((wlo, whi))) = (m.range(), w.range()) else {
        return if dim == 0 { Ok(()) } else { Err("empty filtration".into()) };
    };
    for j in mlo - 1..=mhi + 2 {
        if !m.get(j).image_under(n).is_subspace_of(&m.get(j - 2)) {
            return Err(format!("N M_{j} is not inside M_{}", j - 2));
        }
    }
    let span = (mhi - mlo).max(whi - wlo) + (mhi.abs().max(mlo.abs())) + 2;
    for k in wlo..=whi {
        if w.gr_dim(k) == 0 {
            continue;
        }
        let wk = w.get(k);
        let wk1 = w.get(k - 1);
        let a = |j: i32| m.get(j).intersect(&wk).sum(&wk1);
        let gr = |j: i32| a(j).dim() - a(j - 1).dim();
        for l in 0..=span {
            let nl = n.pow(l as u32);
            let (hi, lo) = (k + l, k - l);
            if gr(hi) != gr(lo) {
                return Err(format!(
                    "on gr^W_{k}: dim gr_{hi} = {} but dim gr_{lo} = {}",
                    gr(hi),
                    gr(lo)
                ));
            }
            if l == 0 {
                continue;
            }
            let src = a(hi);
            if !src.image_under(&nl).is_subspace_of(&a(lo)) {
                return Err(format!("on gr^W_{k}: N^{l} does not map level {hi} into level {lo}"));
            }
            let killed = src.intersect(&a(lo - 1).preimage(&nl));
            if !killed.is_subspace_of(&a(hi - 1)) {
                return Err(format!("on gr^W_{k}: N^{l} is not injective on gr_{hi}"));
            }
        }
    }
    Ok(())
}
