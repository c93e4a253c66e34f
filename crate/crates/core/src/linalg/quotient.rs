//! Orders of classes in quotients `Q^n / (A + V)`.

use num_integer::Integer;
use num_traits::One;

use super::lattice::ZLattice;
use super::matrix::QMat;
use super::rat::{Int, Rat};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Smallest `a ≥ 1` with `a·x ∈ A + V`.
///
/// Projects along `V` with an annihilator matrix `K` (so `K v = 0` iff
/// `v ∈ V`), then reads `a` off the coordinate denominators of `K x` in the
/// canonical Z-basis of `K(A)`.
pub fn order_in_quotient(x: &[Rat], a: &ZLattice, v: &Subspace) -> Result<Int> {
    let n = x.len();
    let ann = v.annihilator();
    let proj = |w: &[Rat]| -> Vec<Rat> {
        if ann.is_empty() {
            Vec::new()
        } else {
            QMat::from_rows(ann.clone()).mul_vec(w)
        }
    };
    let images: Vec<Vec<Rat>> = a.basis().iter().map(|b| proj(b)).collect();
    let pa = ZLattice::from_generators(ann.len(), &images);
    let coords = pa.coords(&proj(x)).ok_or_else(|| {
        Error::PreconditionViolated(format!("vector of length {n} is outside the Q-span of A + V"))
    })?;
    Ok(coords.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom())))
}
