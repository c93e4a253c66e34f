//! Nilpotent endomorphisms and the unipotent logarithm.

use crate::error::{Error, Result};
use crate::linalg::matrix::small;
use crate::linalg::{QMat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilpotentEndo {
    matrix: QMat,
    index: u32,
}

impl NilpotentEndo {
    pub fn new(matrix: QMat) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidData("endomorphism must be square".into()));
        }
        let index = matrix.nilpotency_index().ok_or(Error::NotNilpotent)?;
        Ok(Self { matrix, index })
    }

    pub fn zero(n: usize) -> Self {
        Self { matrix: QMat::zeros(n, n), index: if n == 0 { 0 } else { 1 } }
    }

    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }

    /// Smallest `p` with `N^p = 0`.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn exp(&self) -> QMat {
        self.matrix.exp_nilpotent().expect("nilpotent by construction")
    }
}

/// `log g = Σ_{k≥1} (-1)^{k+1} (g - 1)^k / k`, exact because `g - 1` is nilpotent.
pub fn log_unipotent(g: &QMat) -> Result<NilpotentEndo> {
    if !g.is_square() {
        return Err(Error::InvalidData("monodromy must be square".into()));
    }
    let n = g.nrows();
    let m = g.sub(&QMat::identity(n));
    let idx = m.nilpotency_index().ok_or(Error::NotUnipotent)?;
    let mut acc = QMat::zeros(n, n);
    let mut term = QMat::identity(n);
    for k in 1..idx {
        term = term.mul(&m);
        let c = small::<Rat>(k).recip();
        let c = if k % 2 == 1 { c } else { -c };
        acc = acc.add(&term.scale(&c));
    }
    let log = NilpotentEndo::new(acc)?;
    if &log.exp() != g {
        return Err(Error::InvariantViolation("exp(log g) != g".into()));
    }
    Ok(log)
}
