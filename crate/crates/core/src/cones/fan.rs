//! Finite fans, their axiom check, and the interface of infinite fans that
//! are only ever materialized on windows.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{QMat, Rat};

use super::cone::{Cone, Functional};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteFan {
    cones: BTreeSet<Cone>,
}

impl FiniteFan {
    pub fn new(cones: impl IntoIterator<Item = Cone>) -> Self {
        Self { cones: cones.into_iter().collect() }
    }

    /// The given cones together with all their faces.
    pub fn closure(cells: impl IntoIterator<Item = Cone>) -> Self {
        let mut cones = BTreeSet::new();
        for c in cells {
            if cones.contains(&c) {
                continue;
            }
            cones.extend(c.faces());
        }
        Self { cones }
    }

    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.cones.contains(c)
    }

    pub fn insert(&mut self, c: Cone) {
        self.cones.insert(c);
    }

    pub fn remove(&mut self, c: &Cone) -> bool {
        self.cones.remove(c)
    }

    /// Cones that are not proper faces of other members.
    /// Members that are not a proper face of another member.
    pub fn maximal(&self) -> Vec<&Cone> {
        let list: Vec<&Cone> = self.cones.iter().collect();
        list.par_iter()
            .filter(|c| {
                !list.iter().any(|d| d.rays().len() > c.rays().len() && c.is_face_of(d).unwrap_or(false))
            })
            .copied()
            .collect()
    }

    /// JSON form: the cones, and for each cone the indices of its proper faces
    /// present in the fan.
    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<&Cone> = self.cones.iter().collect();
        let faces: Vec<Vec<usize>> = list
            .iter()
            .map(|c| {
                list.iter()
                    .enumerate()
                    .filter(|(_, f)| *f != c && f.is_face_of(c).unwrap_or(false))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        serde_json::json!({ "cones": list, "faces": faces })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanViolation {
    MissingFace { cone: Cone, face: Cone },
    BadIntersection { a: Cone, b: Cone, meet: Cone },
    MixedAmbient { a: Cone, b: Cone },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub cones: usize,
    pub violations: Vec<FanViolation>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Face closure and the pairwise intersection axiom.
///
/// Every member is a face of a maximal member, and an intersection of faces
/// of two maximal cones is a face of their intersection, so it suffices to
/// check face closure and pairwise intersections on the maximal members.
pub fn check_fan(fan: &FiniteFan) -> FanReport {
    let top = fan.maximal();
    let mut violations: Vec<FanViolation> = top
        .par_iter()
        .flat_map_iter(|c| {
            c.faces()
                .into_iter()
                .filter(|f| !fan.contains(f))
                .map(|f| FanViolation::MissingFace { cone: (*c).clone(), face: f })
                .collect::<Vec<_>>()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..top.len()).flat_map(|i| (i + 1..top.len()).map(move |j| (i, j))).collect();
    violations.extend(
        pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let (a, b) = (top[i], top[j]);
                match a.intersect(b) {
                    Err(_) => Some(FanViolation::MixedAmbient { a: a.clone(), b: b.clone() }),
                    Ok(meet) => {
                        let ok = meet.is_face_of(a).unwrap_or(false) && meet.is_face_of(b).unwrap_or(false);
                        (!ok).then(|| FanViolation::BadIntersection { a: a.clone(), b: b.clone(), meet })
                    }
                }
            })
            .collect::<Vec<_>>(),
    );
    FanReport { cones: fan.len(), violations }
}

/// Window of an infinite fan: cube cells with `|n_j| ≤ bound`, classes drawn
/// from `cosets` (the fan's defaults when `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub bound: i64,
    pub cosets: Option<Vec<Vec<Rat>>>,
}

impl Window {
    pub fn new(bound: i64) -> Self {
        Self { bound, cosets: None }
    }
}

/// Affine cube-grid coordinates of a fan's cell structure around a cone:
/// cells are `n_j·t ≤ c_j ≤ (n_j + 1)·t` with `t ≥ 0`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub scale: Functional,
    pub coords: Vec<Functional>,
}

/// An infinite fan known through membership and cell lookup.
pub trait LazyFan: Send + Sync {
    fn name(&self) -> &str;

    /// Matrix size of the ambient space.
    fn size(&self) -> usize;

    /// A maximal cone of the fan containing `n`, if any.
    fn cell_containing(&self, n: &QMat) -> Option<Cone>;

    fn is_member(&self, c: &Cone) -> bool {
        if c.size() != self.size() {
            return false;
        }
        if c.is_zero() {
            return true;
        }
        match self.cell_containing(&c.interior_point()) {
            Some(cell) => c.is_face_of(&cell).unwrap_or(false),
            None => false,
        }
    }

    /// The maximal cones in the window.
    fn window_cells(&self, w: &Window) -> Vec<Cone>;

    fn window(&self, w: &Window) -> FiniteFan {
        let mut fan = FiniteFan::closure(self.window_cells(w));
        fan.insert(Cone::zero(self.size()));
        fan
    }

    /// Grid coordinates for subdividing `c`; `Err` when `c` lies outside the
    /// region the fan is built to cover, `Ok(None)` when the fan has no grid.
    fn grid_for(&self, _c: &Cone) -> crate::Result<Option<Grid>> {
        Ok(None)
    }
}
