//! Sharp rational polyhedral cones of endomorphisms.
//!
//! A cone is stored as its extreme rays: primitive integer vectors over the
//! flattened matrix entries (`i * size + j`), kept sparse and sorted, so that
//! equality of cones is equality of data. The inequality description is
//! computed on demand in the coordinates of the span.

use std::collections::{BTreeSet, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};
use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::field;
use crate::linalg::rat::{from_int, primitive, primitive_int};
use crate::linalg::{Int, QMat, Rat, Subspace};

use super::dd::extreme_rays;
use super::gspace::GSpace;

/// Sparse primitive integer direction over flattened matrix entries.
pub type SparseRay = Vec<(usize, Int)>;
/// Sparse rational linear functional over flattened matrix entries.
pub type Functional = Vec<(usize, Rat)>;

#[derive(Debug)]
struct HRep {
    /// Flattened indices carrying some ray.
    support: Vec<usize>,
    /// RREF basis of the span, in support coordinates.
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    /// Inward facet normals in span coordinates `y = x[pivots]`.
    facets: Vec<Vec<Int>>,
}

impl HRep {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Support coordinates of a flattened sparse vector, or `None` when it
    /// has entries outside the support.
    fn compact(&self, v: &[(usize, Rat)]) -> Option<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.support.len()];
        for (i, x) in v {
            if x.is_zero() {
                continue;
            }
            let k = self.support.binary_search(i).ok()?;
            out[k] = x.clone();
        }
        Some(out)
    }

    /// Span coordinates, or `None` outside the span.
    fn local(&self, v: &[(usize, Rat)]) -> Option<Vec<Rat>> {
        let x = self.compact(v)?;
        let y: Vec<Rat> = self.pivots.iter().map(|&p| x[p].clone()).collect();
        let mut back = vec![Rat::zero(); x.len()];
        for (yi, b) in y.iter().zip(&self.basis) {
            if yi.is_zero() {
                continue;
            }
            for (acc, bj) in back.iter_mut().zip(b) {
                *acc += yi * bj;
            }
        }
        (back == x).then_some(y)
    }
}

#[derive(Clone)]
pub struct Cone {
    size: usize,
    rays: Vec<SparseRay>,
    hrep: OnceLock<Arc<HRep>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size, self.rays.len(), &self.rays).cmp(&(other.size, other.rays.len(), &other.rays))
    }
}

impl std::fmt::Debug for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cone").field("size", &self.size).field("rays", &self.rays).finish()
    }
}

pub fn flatten(m: &QMat) -> Functional {
    let n = m.ncols();
    let mut out = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..n {
            let x = m.get(i, j);
            if !x.is_zero() {
                out.push((i * n + j, x.clone()));
            }
        }
    }
    out
}

fn unflatten(size: usize, v: &[(usize, Rat)]) -> QMat {
    let mut m = QMat::zeros(size, size);
    for (k, x) in v {
        m.set(k / size, k % size, x.clone());
    }
    m
}

fn to_ray(v: &[(usize, Rat)]) -> SparseRay {
    let vals: Vec<Rat> = v.iter().map(|(_, x)| x.clone()).collect();
    let p = primitive(&vals);
    v.iter().zip(p).filter(|(_, x)| !x.is_zero()).map(|((i, _), x)| (*i, x)).collect()
}

fn ray_rat(r: &SparseRay) -> Functional {
    r.iter().map(|(i, x)| (*i, from_int(x))).collect()
}

fn support_of(rays: &[SparseRay]) -> Vec<usize> {
    let s: BTreeSet<usize> = rays.iter().flat_map(|r| r.iter().map(|(i, _)| *i)).collect();
    s.into_iter().collect()
}

fn int_row(v: &[Rat]) -> Vec<Int> {
    primitive(v)
}

fn idot(a: &[Int], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + from_int(x) * y
        }
    })
}

/// Span and facets of the cone generated by `rays` (nonzero, primitive).
fn describe(rays: &[SparseRay]) -> Result<(HRep, Vec<Vec<Rat>>)> {
    let support = support_of(rays);
    let dense: Vec<Vec<Rat>> = rays
        .iter()
        .map(|r| {
            let mut x = vec![Rat::zero(); support.len()];
            for (i, v) in r {
                x[support.binary_search(i).expect("in support")] = from_int(v);
            }
            x
        })
        .collect();
    let rr = field::rref(dense.clone(), support.len());
    let pivots = rr.pivots.clone();
    let basis = rr.rows[..pivots.len()].to_vec();
    let local: Vec<Vec<Rat>> = dense.iter().map(|x| pivots.iter().map(|&p| x[p].clone()).collect()).collect();
    let a: Vec<Vec<Int>> = local.iter().map(|y| int_row(y)).collect();
    let facets = extreme_rays(&a, pivots.len())?;
    Ok((HRep { support, basis, pivots, facets }, local))
}

impl Cone {
    /// The cone `{0}` in `size × size` matrices.
    pub fn zero(size: usize) -> Self {
        let hrep = OnceLock::new();
        let _ = hrep.set(Arc::new(HRep { support: vec![], basis: vec![], pivots: vec![], facets: vec![] }));
        Cone { size, rays: Vec::new(), hrep }
    }

    /// Cone generated by elements of `g`, after checking nilpotency,
    /// commutativity and sharpness.
    pub fn from_generators(gs: &GSpace, mats: &[QMat]) -> Result<Self> {
        for m in mats {
            gs.check_member(m)?;
            if !m.is_nilpotent() {
                return Err(Error::NotNilpotent);
            }
        }
        for (i, a) in mats.iter().enumerate() {
            for b in &mats[i + 1..] {
                if !a.commutator(b).is_zero() {
                    return Err(Error::NotCommutative);
                }
            }
        }
        Self::polyhedral(gs.size(), mats)
    }

    /// Canonical sharp cone generated by arbitrary matrices (no algebraic
    /// checks).
    pub fn polyhedral(size: usize, mats: &[QMat]) -> Result<Self> {
        for m in mats {
            if m.nrows() != size || m.ncols() != size {
                return Err(Error::MixedAmbient);
            }
        }
        Self::from_vectors(size, mats.iter().map(flatten).collect())
    }

    pub(crate) fn from_vectors(size: usize, gens: Vec<Functional>) -> Result<Self> {
        let mut rays: Vec<SparseRay> = gens.iter().filter(|v| !v.is_empty()).map(|v| to_ray(v)).collect();
        rays.sort();
        rays.dedup();
        if rays.is_empty() {
            return Ok(Self::zero(size));
        }
        let (h, local) = describe(&rays)?;
        let s: Vec<Int> = (0..h.dim())
            .map(|k| h.facets.iter().fold(Int::zero(), |acc, f| acc + &f[k]))
            .collect();
        if local.iter().any(|y| !idot(&s, y).is_positive()) {
            return Err(Error::NotSharp);
        }
        let r = h.dim();
        let keep: Vec<bool> = local
            .iter()
            .map(|y| {
                let tight: Vec<Vec<Rat>> = h
                    .facets
                    .iter()
                    .filter(|f| idot(f, y).is_zero())
                    .map(|f| f.iter().map(from_int).collect())
                    .collect();
                field::rank(&tight, r) + 1 == r
            })
            .collect();
        let rays: Vec<SparseRay> = rays.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
        let hrep = OnceLock::new();
        let _ = hrep.set(Arc::new(h));
        Ok(Cone { size, rays, hrep })
    }

    /// Trusts that `rays` are exactly the extreme rays of a sharp cone.
    pub(crate) fn from_extreme_unchecked(size: usize, mut rays: Vec<SparseRay>) -> Self {
        rays.sort();
        rays.dedup();
        Cone { size, rays, hrep: OnceLock::new() }
    }

    /// Cone whose extreme rays are the given matrices, without verification.
    /// For internally built cells whose vertices are known to be extreme.
    pub fn from_extreme_matrices_unchecked(size: usize, mats: &[QMat]) -> Self {
        Self::from_extreme_unchecked(size, mats.iter().map(|m| to_ray(&flatten(m))).filter(|r| !r.is_empty()).collect())
    }

    fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            if self.rays.is_empty() {
                return Arc::new(HRep { support: vec![], basis: vec![], pivots: vec![], facets: vec![] });
            }
            Arc::new(describe(&self.rays).expect("stored rays span a pointed cone").0)
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.hrep().dim()
    }

    pub fn rays(&self) -> &[SparseRay] {
        &self.rays
    }

    pub fn ray_matrices(&self) -> Vec<QMat> {
        self.rays.iter().map(|r| unflatten(self.size, &ray_rat(r))).collect()
    }

    /// Sum of the extreme rays: a point of the relative interior.
    pub fn interior_point(&self) -> QMat {
        let mut acc = QMat::zeros(self.size, self.size);
        for m in self.ray_matrices() {
            acc = acc.add(&m);
        }
        acc
    }

    pub fn facet_count(&self) -> usize {
        self.hrep().facets.len()
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::MixedAmbient);
        }
        Ok(())
    }

    pub fn contains(&self, n: &QMat) -> Result<bool> {
        if n.nrows() != self.size || n.ncols() != self.size {
            return Err(Error::MixedAmbient);
        }
        Ok(self.contains_flat(&flatten(n)))
    }

    pub(crate) fn contains_flat(&self, v: &[(usize, Rat)]) -> bool {
        let h = self.hrep();
        match h.local(v) {
            None => false,
            Some(y) => h.facets.iter().all(|f| !idot(f, &y).is_negative()),
        }
    }

    /// Whether `self ⊆ other`.
    pub fn is_subcone_of(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.rays.iter().all(|r| other.contains_flat(&ray_rat(r))))
    }

    fn ray_index(&self, r: &SparseRay) -> Option<usize> {
        self.rays.binary_search(r).ok()
    }

    /// Incidence: for each facet, which rays lie on it.
    fn incidence(&self) -> Vec<Vec<bool>> {
        let h = self.hrep();
        let locals: Vec<Vec<Rat>> = self.rays.iter().map(|r| h.local(&ray_rat(r)).expect("ray in span")).collect();
        h.facets.iter().map(|f| locals.iter().map(|y| idot(f, y).is_zero()).collect()).collect()
    }

    fn sub_cone(&self, mask: &[bool]) -> Cone {
        let rays = self.rays.iter().zip(mask).filter(|(_, m)| **m).map(|(r, _)| r.clone()).collect();
        Cone::from_extreme_unchecked(self.size, rays)
    }

    /// All faces, including `{0}` and the cone itself, ordered by dimension.
    pub fn faces(&self) -> Vec<Cone> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        let inc = self.incidence();
        let all = vec![true; self.rays.len()];
        let mut seen: HashSet<Vec<bool>> = HashSet::from([all.clone()]);
        let mut queue: Vec<Vec<bool>> = Vec::new();
        for f in &inc {
            if seen.insert(f.clone()) {
                queue.push(f.clone());
            }
        }
        while let Some(s) = queue.pop() {
            for f in &inc {
                let t: Vec<bool> = s.iter().zip(f).map(|(a, b)| *a && *b).collect();
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        let mut faces: Vec<Cone> = seen.iter().map(|m| self.sub_cone(m)).collect();
        faces.sort();
        faces.dedup();
        faces.sort_by_key(|c| (c.dim(), c.rays.clone()));
        faces
    }

    /// Whether `self` is a face of `c`.
    pub fn is_face_of(&self, c: &Cone) -> Result<bool> {
        self.check_size(c)?;
        if self.is_zero() {
            return Ok(true);
        }
        let Some(idx): Option<Vec<usize>> = self.rays.iter().map(|r| c.ray_index(r)).collect() else {
            return Ok(false);
        };
        // Extreme rays are exactly the one-dimensional faces.
        if self.rays.len() == 1 {
            return Ok(true);
        }
        let inc = c.incidence();
        let mut on_face = vec![true; c.rays.len()];
        for f in inc.iter().filter(|f| idx.iter().all(|&i| f[i])) {
            for (a, b) in on_face.iter_mut().zip(f) {
                *a &= *b;
            }
        }
        let face_rays: Vec<&SparseRay> = c.rays.iter().zip(&on_face).filter(|(_, m)| **m).map(|(r, _)| r).collect();
        Ok(face_rays.len() == self.rays.len() && face_rays.iter().zip(&self.rays).all(|(a, b)| *a == b))
    }

    /// `{x ∈ self : φ(x) ≥ 0 for all φ}`.
    pub fn intersect_halfspaces(&self, functionals: &[Functional]) -> Result<Cone> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let h = self.hrep();
        let mut rows: Vec<Vec<Rat>> = h.facets.iter().map(|f| f.iter().map(from_int).collect()).collect();
        for phi in functionals {
            rows.push(
                h.basis
                    .iter()
                    .map(|b| {
                        phi.iter()
                            .filter_map(|(i, c)| h.support.binary_search(i).ok().map(|k| c * &b[k]))
                            .fold(Rat::zero(), |a, x| a + x)
                    })
                    .collect(),
            );
        }
        self.solve_in(&h.support, &h.basis, rows)
    }

    /// `{Σ y_i B_i : A y ≥ 0}` as a canonical cone.
    fn solve_in(&self, support: &[usize], basis: &[Vec<Rat>], rows: Vec<Vec<Rat>>) -> Result<Cone> {
        let a: Vec<Vec<Int>> = rows.iter().map(|r| int_row(r)).collect();
        let ys = extreme_rays(&a, basis.len())?;
        let rays = ys
            .iter()
            .map(|y| {
                let x: Vec<Rat> = (0..support.len())
                    .map(|k| y.iter().zip(basis).fold(Rat::zero(), |acc, (yi, b)| acc + from_int(yi) * &b[k]))
                    .collect();
                let xi = primitive(&x);
                support.iter().zip(xi).filter(|(_, v)| !v.is_zero()).map(|(i, v)| (*i, v)).collect()
            })
            .collect();
        Ok(Cone::from_extreme_unchecked(self.size, rays))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_size(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Cone::zero(self.size));
        }
        let (h1, h2) = (self.hrep(), other.hrep());
        let support: Vec<usize> = h1.support.iter().chain(&h2.support).copied().collect::<BTreeSet<_>>().into_iter().collect();
        let lift = |h: &HRep| -> Vec<Vec<Rat>> {
            h.basis
                .iter()
                .map(|b| {
                    let mut x = vec![Rat::zero(); support.len()];
                    for (k, i) in h.support.iter().enumerate() {
                        x[support.binary_search(i).expect("union")] = b[k].clone();
                    }
                    x
                })
                .collect()
        };
        let s1 = Subspace::span(support.len(), &lift(h1));
        let s2 = Subspace::span(support.len(), &lift(h2));
        let v = s1.intersect(&s2);
        if v.is_zero() {
            return Ok(Cone::zero(self.size));
        }
        let basis = v.basis().to_vec();
        // facet functionals evaluated on the basis of the common span
        let mut rows = Vec::new();
        for h in [h1, h2] {
            for f in &h.facets {
                rows.push(
                    basis
                        .iter()
                        .map(|b| {
                            f.iter().zip(&h.pivots).fold(Rat::zero(), |acc, (fk, &p)| {
                                let i = h.support[p];
                                acc + from_int(fk) * &b[support.binary_search(&i).expect("union")]
                            })
                        })
                        .collect(),
                );
            }
        }
        self.solve_in(&support, &basis, rows)
    }

    /// `Ad(g)` applied to the cone, given `g` and its inverse.
    pub fn conjugate(&self, g: &QMat, g_inv: &QMat) -> Cone {
        let mats: Vec<QMat> = self.ray_matrices().iter().map(|m| g.mul(m).mul(g_inv)).collect();
        Cone::from_extreme_matrices_unchecked(self.size, &mats)
    }

    /// Linear functional evaluation on a flattened vector.
    pub fn eval(phi: &[(usize, Rat)], v: &[(usize, Rat)]) -> Rat {
        let mut acc = Rat::zero();
        let (mut i, mut j) = (0, 0);
        while i < phi.len() && j < v.len() {
            match phi[i].0.cmp(&v[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &phi[i].1 * &v[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mats: Vec<Vec<Vec<String>>> = self.ray_matrices().iter().map(QMat::to_strings).collect();
        mats.serialize(s)
    }
}

/// Primitive integer vector helper for callers building rays by hand.
pub fn primitive_ray(v: &[(usize, Int)]) -> SparseRay {
    let idx: Vec<usize> = v.iter().map(|(i, _)| *i).collect();
    let vals = primitive_int(v.iter().map(|(_, x)| x.clone()).collect());
    idx.into_iter().zip(vals).filter(|(_, x)| !x.is_zero()).collect()
}
