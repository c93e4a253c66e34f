//! The Lie algebra `g` of endomorphisms of `H` preserving `W` and killing
//! both graded pairings infinitesimally.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hodge::{ExtensionFrame, Symmetry};
use crate::linalg::rat::ri;
use crate::linalg::QMat;

#[derive(Clone, Debug)]
pub struct GSpace {
    frame: ExtensionFrame,
}

impl GSpace {
    pub fn new(frame: &ExtensionFrame) -> Self {
        Self { frame: frame.clone() }
    }

    pub fn frame(&self) -> &ExtensionFrame {
        &self.frame
    }

    /// Matrix size `rank H' + 1`.
    pub fn size(&self) -> usize {
        self.frame.dim()
    }

    /// `g = {[[A, v], [0, 0]] : A ∈ g'}`: `W` forces the last row to vanish
    /// off the diagonal, the weight-0 pairing kills the diagonal entry.
    pub fn check_member(&self, x: &QMat) -> Result<()> {
        let d = self.frame.rank();
        if x.nrows() != d + 1 || x.ncols() != d + 1 {
            return Err(Error::NotInG(format!("shape {}x{}, expected {}x{}", x.nrows(), x.ncols(), d + 1, d + 1)));
        }
        if !x.row(d).iter().all(Zero::is_zero) {
            return Err(Error::NotInG("does not map H into H' or acts on gr_0".into()));
        }
        if !self.frame.base.pairing.infinitesimally_preserved_by(&x.submatrix(0..d, 0..d)) {
            return Err(Error::NotInG("restriction does not preserve the pairing on H'".into()));
        }
        Ok(())
    }

    pub fn contains(&self, x: &QMat) -> bool {
        self.check_member(x).is_ok()
    }

    /// `dim g = dim g' + rank H'`.
    pub fn dim(&self) -> usize {
        let d = self.frame.rank();
        let g_prime = match self.frame.base.pairing.symmetry() {
            Symmetry::Alternating => d * (d + 1) / 2,
            Symmetry::Symmetric => d * (d.saturating_sub(1)) / 2,
        };
        g_prime + d
    }

    /// A basis: `G⁻¹S` for `S` running over elementary symmetric (for an
    /// alternating form) or skew (for a symmetric form) matrices, plus the
    /// maps `e ↦ e_i`.
    pub fn basis(&self) -> Vec<QMat> {
        let d = self.frame.rank();
        let g_inv = self.frame.base.pairing.gram().inverse().expect("nondegenerate");
        let skew = self.frame.base.pairing.symmetry() == Symmetry::Symmetric;
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                if skew && i == j {
                    continue;
                }
                let mut s = QMat::zeros(d, d);
                s.set(i, j, ri(1));
                s.set(j, i, if skew { ri(-1) } else { ri(1) });
                out.push(self.frame.extend_with(&g_inv.mul(&s), &vec![ri(0); d]));
            }
        }
        for i in 0..d {
            let mut v = vec![ri(0); d];
            v[i] = ri(1);
            out.push(self.frame.extend_with(&QMat::zeros(d, d), &v));
        }
        out
    }
}
