//! Pointwise predicates for the classifying spaces: the flag condition, the
//! compact dual, the open orbit `D`, small Griffiths transversality and a
//! sampled nilpotent-orbit test.
//!
//! All predicates are exact over `Q(i)`. The pairings are extended
//! bilinearly; positivity is `i^{p-q}⟨x, x̄⟩_k > 0` on `F^p ∩ F̄^q` of
//! `gr^W_k`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::{ExtensionFrame, HodgeNumbers};
use crate::linalg::field::det;
use crate::linalg::rat::{dot, ri};
use crate::linalg::{Matrix, QMat, Subspace};

use super::gaussian::{complexify, conj_vec, format_grat, i_pow, i_unit, parse_grat, CMat, GRat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub p: i32,
    pub vectors: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct PeriodPoint {
    frame: ExtensionFrame,
    /// Listed levels `F^p`; unlisted `p` take the next listed level above,
    /// and everything above the top level is zero.
    levels: BTreeMap<i32, Subspace<GRat>>,
}

/// One graded piece `gr^W_k`: the Hodge numbers and the pairing there.
struct Graded {
    k: i32,
    hodge: HodgeNumbers,
    gram: CMat,
}

impl PeriodPoint {
    pub fn new(frame: &ExtensionFrame, levels: BTreeMap<i32, Vec<Vec<GRat>>>) -> Result<Self> {
        let dim = frame.dim();
        if frame.base.hodge_numbers.is_empty() {
            return Err(Error::MissingHodgeData);
        }
        let mut spaces = BTreeMap::new();
        for (p, vecs) in levels {
            if vecs.iter().any(|v| v.len() != dim) {
                return Err(Error::InvalidData(format!("F^{p} has a vector of the wrong length")));
            }
            spaces.insert(p, Subspace::span(dim, &vecs));
        }
        let pt = Self { frame: frame.clone(), levels: spaces };
        for (p, s) in &pt.levels {
            if !pt.get(p + 1).is_subspace_of(s) {
                return Err(Error::InvalidData(format!("F^{} is not inside F^{p}", p + 1)));
            }
        }
        if let Some(why) = pt.flag_violation() {
            return Err(Error::InvalidData(format!("flag condition fails: {why}")));
        }
        Ok(pt)
    }

    /// From `[{"p": p, "vectors": [["a+b*i", ...], ...]}, ...]`.
    pub fn from_json(frame: &ExtensionFrame, levels: &[LevelJson]) -> Result<Self> {
        let mut out = BTreeMap::new();
        for l in levels {
            let vecs = l.vectors.iter().map(|v| v.iter().map(|x| parse_grat(x)).collect()).collect::<Result<_>>()?;
            if out.insert(l.p, vecs).is_some() {
                return Err(Error::InvalidData(format!("level F^{} listed twice", l.p)));
            }
        }
        Self::new(frame, out)
    }

    pub fn to_json(&self) -> Vec<LevelJson> {
        self.levels
            .iter()
            .map(|(p, s)| LevelJson { p: *p, vectors: s.basis().iter().map(|v| v.iter().map(format_grat).collect()).collect() })
            .collect()
    }

    pub fn frame(&self) -> &ExtensionFrame {
        &self.frame
    }

    pub fn get(&self, p: i32) -> Subspace<GRat> {
        self.levels
            .range(p..)
            .next()
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.frame.dim()))
    }

    fn p_range(&self) -> (i32, i32) {
        let lo = self.levels.keys().next().copied().unwrap_or(0);
        let hi = self.levels.keys().next_back().copied().unwrap_or(0);
        (lo - 1, hi + 1)
    }

    fn graded(&self) -> Vec<Graded> {
        let k = self.frame.weight_k();
        vec![
            Graded { k, hodge: self.frame.base.hodge_numbers.clone(), gram: complexify(self.frame.base.pairing.gram()) },
            Graded { k: 0, hodge: HodgeNumbers::from([((0, 0), 1)]), gram: complexify(self.frame.pairing0.gram()) },
        ]
    }

    /// `F^p` on `gr^W_k`, in the coordinates of that graded piece.
    fn on_graded(&self, space: &Subspace<GRat>, k: i32) -> Subspace<GRat> {
        let d = self.frame.rank();
        if k == 0 {
            let last: Vec<Vec<GRat>> = space.basis().iter().map(|v| vec![v[d].clone()]).collect();
            Subspace::span(1, &last)
        } else {
            let hp = Subspace::span(
                d + 1,
                &(0..d).map(|i| unit(d + 1, i)).collect::<Vec<_>>(),
            );
            let cut = space.intersect(&hp);
            let vs: Vec<Vec<GRat>> = cut.basis().iter().map(|v| v[..d].to_vec()).collect();
            Subspace::span(d, &vs)
        }
    }

    fn flag_violation(&self) -> Option<String> {
        let (lo, hi) = self.p_range();
        for gr in self.graded() {
            for p in lo - 1..=hi + 1 {
                let a = self.on_graded(&self.get(p), gr.k).dim();
                let b = self.on_graded(&self.get(p + 1), gr.k).dim();
                let want = gr.hodge.get(&(p, gr.k - p)).copied().unwrap_or(0);
                if a - b != want {
                    return Some(format!("dim gr^{p}_F gr^W_{} = {}, expected {want}", gr.k, a - b));
                }
            }
            let top = self.on_graded(&self.get(lo - 1), gr.k);
            if top.dim() != top.ambient_dim() {
                return Some(format!("lowest level does not fill gr^W_{}", gr.k));
            }
        }
        None
    }

    /// `⟨F^p, F^q⟩_k = 0` whenever `p + q > k`.
    pub fn in_compact_dual(&self) -> bool {
        let (lo, hi) = self.p_range();
        self.graded().iter().all(|gr| {
            (lo..=hi).all(|p| {
                (lo..=hi).filter(|q| p + q > gr.k).all(|q| {
                    let fp = self.on_graded(&self.get(p), gr.k);
                    let fq = self.on_graded(&self.get(q), gr.k);
                    fp.basis().iter().all(|x| fq.basis().iter().all(|y| bilinear(&gr.gram, x, y).is_zero()))
                })
            })
        })
    }

    /// Positivity of `i^{p-q}⟨x, x̄⟩_k` on every `H^{p,q}(gr^W_k)`.
    pub fn in_d(&self) -> Result<bool> {
        Ok(self.positivity_witness()?.is_none())
    }

    /// `None` when the point lies in `D`, else a description of the failure.
    pub fn positivity_witness(&self) -> Result<Option<String>> {
        if !self.in_compact_dual() {
            return Err(Error::NotInCompactDual);
        }
        for gr in self.graded() {
            for (&(p, q), &h) in &gr.hodge {
                if h == 0 {
                    continue;
                }
                let fp = self.on_graded(&self.get(p), gr.k);
                let fq_bar = Subspace::span(
                    fp.ambient_dim(),
                    &self.on_graded(&self.get(q), gr.k).basis().iter().map(|v| conj_vec(v)).collect::<Vec<_>>(),
                );
                let hpq = fp.intersect(&fq_bar);
                if hpq.dim() != h {
                    return Ok(Some(format!("dim H^{{{p},{q}}}(gr_{}) = {}, expected {h}", gr.k, hpq.dim())));
                }
                let c = i_pow(p - q);
                let b = hpq.basis();
                let herm: Vec<Vec<GRat>> = b
                    .iter()
                    .map(|x| b.iter().map(|y| &c * bilinear(&gr.gram, x, &conj_vec(y))).collect())
                    .collect();
                for r in 1..=herm.len() {
                    let minor: Vec<Vec<GRat>> = herm[..r].iter().map(|row| row[..r].to_vec()).collect();
                    let m = det(minor);
                    if !(m.im.is_zero() && m.re.is_positive()) {
                        return Ok(Some(format!(
                            "leading minor {r} of the Hermitian form on H^{{{p},{q}}}(gr_{}) is {}",
                            gr.k,
                            format_grat(&m)
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `N F^p ⊆ F^{p-1}` for all `p`.
    pub fn small_griffiths(&self, n: &QMat) -> bool {
        let nc = complexify(n);
        let (lo, hi) = self.p_range();
        (lo..=hi + 1).all(|p| self.get(p).image_under(&nc).is_subspace_of(&self.get(p - 1)))
    }

    /// `g·F`.
    pub fn transform(&self, g: &CMat) -> Self {
        Self {
            frame: self.frame.clone(),
            levels: self.levels.iter().map(|(p, s)| (*p, s.image_under(g))).collect(),
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<GRat> {
    let mut v = vec![GRat::zero(); n];
    v[i] = GRat::new(ri(1), ri(0));
    v
}

fn bilinear(gram: &CMat, x: &[GRat], y: &[GRat]) -> GRat {
    dot(x, &gram.mul_vec(y))
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSample {
    pub y: Vec<i64>,
    pub in_d: bool,
}

/// Result of the sampled check; a pass here is a sampled pass, not a proof.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub passed: bool,
    pub grid: &'static str,
    pub samples: Vec<OrbitSample>,
}

pub const DEFAULT_SAMPLES: [i64; 5] = [1, 4, 16, 64, 256];

/// `exp(Σ_j i·y_j·N_j)·F ∈ D` for sampled `y` with `min y_j ≥ threshold`.
/// Uses the full product grid when it has at most 625 points, else the
/// diagonal.
pub fn nilpotent_orbit_test(pt: &PeriodPoint, gens: &[QMat], samples: &[i64], threshold: i64) -> Result<OrbitReport> {
    for (j, n) in gens.iter().enumerate() {
        if !pt.small_griffiths(n) {
            return Err(Error::GriffithsViolated(format!("generator {j} moves some F^p outside F^(p-1)")));
        }
    }
    let ys: Vec<i64> = samples.iter().copied().filter(|&y| y >= threshold).collect();
    let r = gens.len();
    let full = (ys.len() as f64).powi(r as i32) <= 625.0;
    let grid: Vec<Vec<i64>> = if r == 0 {
        vec![Vec::new()]
    } else if full {
        (0..r).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter()
                .flat_map(|p| ys.iter().map(move |&y| {
                    let mut p = p.clone();
                    p.push(y);
                    p
                }))
                .collect()
        })
    } else {
        ys.iter().map(|&y| vec![y; r]).collect()
    };
    let dim = pt.frame().dim();
    let mut out = Vec::with_capacity(grid.len());
    for y in grid {
        let mut x = Matrix::<GRat>::zeros(dim, dim);
        for (n, &yj) in gens.iter().zip(&y) {
            x = x.add(&complexify(n).scale(&(i_unit() * GRat::new(ri(yj), ri(0)))));
        }
        let g = x.exp_nilpotent().ok_or(Error::NotNilpotent)?;
        let moved = pt.transform(&g);
        let in_d = moved.in_compact_dual() && moved.in_d()?;
        out.push(OrbitSample { y, in_d });
    }
    Ok(OrbitReport {
        passed: out.iter().all(|s| s.in_d),
        grid: if full { "full" } else { "diagonal" },
        samples: out,
    })
}
