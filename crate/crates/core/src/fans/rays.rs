//! Fans of rays `R≥0·N` with `N|H' = N'` and `N(e)` in a fixed lattice.

use num_traits::{One, Zero};

use crate::cones::{Cone, LazyFan, Window};
use crate::hodge::ExtensionFrame;
use crate::linalg::rat::{add_vec, ri, scale_vec, zero_vec};
use crate::linalg::{QMat, Rat, Subspace, ZLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayKind {
    /// `N(e) ∈ N'(H')`.
    Sigma0,
    /// `N(e) ∈ Q ∩ H'`.
    Sigma1,
    /// `N(e) = N'(a)` with `γ'a − a ∈ H'`.
    Neron,
}

#[derive(Clone, Debug)]
pub struct RayFan {
    name: &'static str,
    frame: ExtensionFrame,
    lattice: ZLattice,
}

/// `{N'(a) : γ'a − a ∈ H'} = V⁻¹(Im N' ∩ H')` with
/// `V = (γ' − 1)/N' = 1 + N'/2 + N'²/6 + …`.
pub fn neron_lattice(frame: &ExtensionFrame) -> ZLattice {
    let d = frame.rank();
    let np = frame.n_prime();
    let mut v = QMat::identity(d);
    let mut term = QMat::identity(d);
    let mut k = 1i64;
    loop {
        k += 1;
        term = term.mul(np).scale(&(Rat::one() / ri(k)));
        if term.is_zero() {
            break;
        }
        v = v.add(&term);
    }
    let v_inv = v.inverse().expect("unipotent");
    ZLattice::standard(d).intersect_subspace(&frame.im_n).image_under(&v_inv)
}

impl RayFan {
    pub fn new(frame: &ExtensionFrame, kind: RayKind) -> Self {
        let d = frame.rank();
        let (name, lattice) = match kind {
            RayKind::Sigma0 => ("sigma0", ZLattice::from_generators(d, &frame.n_prime().columns())),
            RayKind::Sigma1 => {
                let q = super::params::compute_pq(frame).q;
                ("sigma1", ZLattice::standard(d).intersect_subspace(&q))
            }
            RayKind::Neron => ("neron", neron_lattice(frame)),
        };
        Self { name, frame: frame.clone(), lattice }
    }

    pub fn lattice(&self) -> &ZLattice {
        &self.lattice
    }

    /// The ray through `N` with `N|H' = N'`, `N(e) = w`.
    pub fn ray(&self, w: &[Rat]) -> Cone {
        Cone::from_extreme_matrices_unchecked(self.frame.dim(), &[self.frame.extend(w)])
    }

    /// Lattice points `Σ z_i b_i` with `|z_i| ≤ bound`.
    pub fn window_points(&self, bound: i64) -> Vec<Vec<Rat>> {
        let basis = self.lattice.basis();
        let side = (2 * bound + 1) as u64;
        (0..side.pow(basis.len() as u32))
            .map(|mut k| {
                basis.iter().fold(zero_vec(self.frame.rank()), |acc, b| {
                    let z = (k % side) as i64 - bound;
                    k /= side;
                    add_vec(&acc, &scale_vec(&ri(z), b))
                })
            })
            .collect()
    }
}

impl LazyFan for RayFan {
    fn name(&self) -> &str {
        self.name
    }

    fn size(&self) -> usize {
        self.frame.dim()
    }

    fn cell_containing(&self, n: &QMat) -> Option<Cone> {
        if n.is_zero() {
            return Some(Cone::zero(self.size()));
        }
        let (r, ne) = self.frame.split(n).ok()?;
        let t = self.frame.restriction_scale(&r)?;
        if t <= Rat::zero() {
            return None;
        }
        let w = scale_vec(&(Rat::one() / t), &ne);
        self.lattice.contains(&w).then(|| self.ray(&w))
    }

    fn window_cells(&self, w: &Window) -> Vec<Cone> {
        if self.frame.n_prime().is_zero() {
            return Vec::new();
        }
        self.window_points(w.bound).iter().map(|p| self.ray(p)).collect()
    }
}

/// Whether the lattice of a ray fan lies in a subspace (for reports).
pub fn lattice_in(l: &ZLattice, v: &Subspace) -> bool {
    l.basis().iter().all(|b| v.contains(b))
}
