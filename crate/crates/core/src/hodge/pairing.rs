//! Bilinear forms given by a Gram matrix.

use crate::error::{Error, Result};
use crate::linalg::rat::dot;
use crate::linalg::{QMat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Alternating,
}

impl Symmetry {
    /// `+1` or `-1`; the sign of the weight parity `(-1)^w`.
    pub fn sign(self) -> i32 {
        match self {
            Symmetry::Symmetric => 1,
            Symmetry::Alternating => -1,
        }
    }

    pub fn for_weight(w: i32) -> Self {
        if w.rem_euclid(2) == 0 {
            Symmetry::Symmetric
        } else {
            Symmetry::Alternating
        }
    }
}

/// `⟨x, y⟩ = xᵀ G y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pairing {
    gram: QMat,
    symmetry: Symmetry,
}

impl Pairing {
    pub fn new(gram: QMat, symmetry: Symmetry) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidData("gram matrix must be square".into()));
        }
        let t = gram.transpose();
        let ok = match symmetry {
            Symmetry::Symmetric => t == gram,
            Symmetry::Alternating => t == gram.neg(),
        };
        if !ok {
            return Err(Error::InvalidData(format!("gram matrix is not {symmetry:?}")));
        }
        if gram.nrows() > 0 && gram.inverse().is_none() {
            return Err(Error::InvalidData("pairing is degenerate".into()));
        }
        Ok(Self { gram, symmetry })
    }

    /// Symmetry inferred from the matrix.
    pub fn from_gram(gram: QMat) -> Result<Self> {
        let sym = if gram.transpose() == gram { Symmetry::Symmetric } else { Symmetry::Alternating };
        Self::new(gram, sym)
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }
    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }
    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Rat {
        dot(x, &self.gram.mul_vec(y))
    }

    /// `gᵀ G g = G`.
    pub fn preserved_by(&self, g: &QMat) -> bool {
        g.transpose().mul(&self.gram).mul(g) == self.gram
    }

    /// `Aᵀ G + G A = 0`.
    pub fn infinitesimally_preserved_by(&self, a: &QMat) -> bool {
        a.transpose().mul(&self.gram).add(&self.gram.mul(a)).is_zero()
    }
}
