//! Fans whose maximal cones are the cube cells `σ(x, n)`.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::cones::{Cone, Functional, Grid, LazyFan, Window};
use crate::error::{Error, Result};
use crate::linalg::rat::{add_vec, from_int, rat, ri, scale_vec};
use crate::linalg::{Int, QMat, Rat};

use super::params::{CellIndex, SigmaParams};

/// Deliberate damage to one cell, for exercising the checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Corruption {
    /// The cell is replaced by the lower half of its cube in the first
    /// direction. The result is still a fan but no longer `Γ`-stable.
    HalfCube,
    /// The cell's cube is translated by half a step in the first direction,
    /// so it overlaps its neighbour.
    ShiftedCube,
}

#[derive(Clone, Debug)]
pub struct CubeFan {
    name: String,
    params: Arc<SigmaParams>,
    corruption: Option<(Corruption, CellIndex)>,
}

impl CubeFan {
    pub fn new(name: &str, params: SigmaParams) -> Self {
        Self { name: name.into(), params: Arc::new(params), corruption: None }
    }

    /// Corrupts the cell `(0, 0)`.
    pub fn corrupted(mut self, kind: Corruption) -> Self {
        let idx = CellIndex { x: vec![Rat::zero(); self.params.rank()], n: vec![Int::zero(); self.params.m()] };
        self.corruption = Some((kind, idx));
        self
    }

    pub fn params(&self) -> &SigmaParams {
        &self.params
    }

    pub fn is_corrupted(&self) -> bool {
        self.corruption.is_some()
    }

    /// The fan's cone at `idx` (honouring any corruption).
    pub fn cell(&self, idx: &CellIndex) -> Result<Cone> {
        match &self.corruption {
            Some((kind, bad)) if bad == idx && self.params.m() > 0 => {
                let p = &self.params;
                let a = p.a_of(&idx.x)?;
                let m = p.m();
                let af = from_int(&a);
                let verts: Vec<QMat> = (0..1u64 << m)
                    .map(|mask| {
                        let mut t: Vec<Rat> =
                            (0..m).map(|j| from_int(&idx.n[j]) + ri(((mask >> j) & 1) as i64)).collect();
                        match kind {
                            Corruption::HalfCube => t[0] = from_int(&idx.n[0]) + rat((mask & 1) as i64, 2),
                            Corruption::ShiftedCube => t[0] += rat(1, 2),
                        }
                        let v = t.iter().zip(&p.basis_e).fold(idx.x.clone(), |acc, (tj, ej)| {
                            add_vec(&acc, &scale_vec(&(tj / &af), ej))
                        });
                        p.frame.extend(&v)
                    })
                    .collect();
                Ok(Cone::from_extreme_matrices_unchecked(p.frame.dim(), &verts))
            }
            _ => self.params.cell(idx),
        }
    }

    pub fn index_containing(&self, n: &QMat) -> Option<CellIndex> {
        self.params.index_containing(n)
    }

    pub fn window_indices(&self, w: &Window) -> Result<Vec<CellIndex>> {
        let cosets = w.cosets.clone().unwrap_or_else(|| self.params.default_cosets());
        self.params.window_indices(w.bound, &cosets)
    }

    /// Scale functional `t(N) = N_{ij} / N'_{ij}` for the first nonzero
    /// entry of `N'`.
    fn scale_functional(&self) -> Option<Functional> {
        let np = self.params.frame.n_prime();
        let size = self.params.frame.dim();
        let d = self.params.rank();
        let (i, j) = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| !np.get(i, j).is_zero())?;
        Some(vec![(i * size + j, ri(1) / np.get(i, j))])
    }
}

impl LazyFan for CubeFan {
    fn name(&self) -> &str {
        &self.name
    }

    fn size(&self) -> usize {
        self.params.frame.dim()
    }

    fn cell_containing(&self, n: &QMat) -> Option<Cone> {
        if n.nrows() != self.size() || n.ncols() != self.size() {
            return None;
        }
        if n.is_zero() {
            let zero_idx = CellIndex { x: vec![Rat::zero(); self.params.rank()], n: vec![Int::zero(); self.params.m()] };
            return self.cell(&zero_idx).ok();
        }
        let idx = self.index_containing(n)?;
        self.cell(&idx).ok()
    }

    fn window_cells(&self, w: &Window) -> Vec<Cone> {
        self.window_indices(w)
            .map(|ids| ids.iter().filter_map(|i| self.cell(i).ok()).collect())
            .unwrap_or_default()
    }

    fn grid_for(&self, c: &Cone) -> Result<Option<Grid>> {
        let p = &self.params;
        if c.is_zero() {
            return Ok(None);
        }
        let Some(scale) = self.scale_functional() else {
            return Err(Error::PreconditionViolated("N' = 0: the cube fan is {0}".into()));
        };
        let mut class: Option<Vec<Rat>> = None;
        for r in c.ray_matrices() {
            let (_, w) = p.normalize(&r).ok_or_else(|| {
                Error::PreconditionViolated("a generator does not restrict to a positive multiple of N'".into())
            })?;
            let x = p
                .section_of(&w)
                .map_err(|_| Error::PreconditionViolated("a generator has N(e) outside P".into()))?;
            match &class {
                None => class = Some(x),
                Some(c0) if *c0 != x => {
                    return Err(Error::PreconditionViolated("generators lie over different classes in P/Q".into()))
                }
                _ => {}
            }
        }
        let x = class.expect("nonzero cone has rays");
        let a = from_int(&p.a_of(&x)?);
        // c_j(N) = a·Ψ_j(N(e)); Ψ kills the section, so no t-correction
        let size = self.size();
        let d = p.rank();
        let coords = p
            .e_dual()
            .iter()
            .map(|row| {
                (0..d)
                    .filter(|&i| !row[i].is_zero())
                    .map(|i| (i * size + d, &a * &row[i]))
                    .collect()
            })
            .collect();
        Ok(Some(Grid { scale, coords }))
    }
}
