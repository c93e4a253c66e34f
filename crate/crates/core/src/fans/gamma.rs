//! The action of `Γ` on cube cells by conjugation.

use crate::error::{Error, Result};
use crate::hodge::{ExtensionFrame, GammaElement};
use crate::linalg::rat::{from_int, sub_vec};
use crate::linalg::{Int, QMat};

use super::params::{CellIndex, SigmaParams};

/// `γ⁻¹`: restriction `(γ')^{-k}`, `γ⁻¹(e) = e − (γ')^{-k} h`.
pub fn inverse(g: &GammaElement, frame: &ExtensionFrame) -> Result<GammaElement> {
    let r_inv = crate::hodge::gamma_power(&frame.base.gamma, -g.power_k);
    let h = r_inv.mul_vec(&g.h_rat());
    if !crate::linalg::rat::is_integral(&h) {
        return Err(Error::NotInGamma("inverse is not integral".into()));
    }
    Ok(GammaElement { power_k: -g.power_k, h: h.iter().map(|x| -x.to_integer()).collect() })
}

/// `(y, n + m)` with `Ad(γ)σ(x, n) = σ(y, n + m)`.
///
/// With `γ(e) = e + h`, `Ad(γ)N` restricts to `N'` and sends `e` to
/// `(γ')^k N(e) − N'h`; the `e_j` are fixed by `γ'`.
pub fn ad_action(params: &SigmaParams, g: &GammaElement, idx: &CellIndex) -> Result<CellIndex> {
    let frame = &params.frame;
    let gm = g.matrix(frame)?;
    let r = g.restriction(frame);
    let v = sub_vec(&r.mul_vec(&idx.x), &frame.n_prime().mul_vec(&g.h_rat()));
    let y = params.section_of(&v)?;
    let q = sub_vec(&v, &y);
    let a = params.a_of(&idx.x)?;
    if params.a_of(&y)? != a {
        return Err(Error::InvariantViolation("a(x) is not Γ-invariant".into()));
    }
    let m = params.e_coords(&q)?;
    let af = from_int(&a);
    let shift: Vec<Int> = m
        .iter()
        .map(|mj| {
            let s = mj * &af;
            if s.is_integer() {
                Ok(s.to_integer())
            } else {
                Err(Error::InvariantViolation("a(x)·q is not in Q∩L".into()))
            }
        })
        .collect::<Result<_>>()?;
    let out = CellIndex { x: y, n: idx.n.iter().zip(&shift).map(|(a, b)| a + b).collect() };
    let g_inv = gm.inverse().expect("unipotent");
    let conj = params.cell(idx)?.conjugate(&gm, &g_inv);
    if conj != params.cell(&out)? {
        return Err(Error::InvariantViolation(format!("Ad(γ) of cell {idx:?} is not the cell {out:?}")));
    }
    Ok(out)
}

/// Generators `γ` with `|k| ≤ max_k` and `h` from a list, plus inverses.
pub fn generating_set(frame: &ExtensionFrame, max_k: i64, hs: &[Vec<Int>]) -> Result<Vec<GammaElement>> {
    let mut out = Vec::new();
    for k in -max_k..=max_k {
        for h in hs {
            let g = GammaElement { power_k: k, h: h.clone() };
            let inv = inverse(&g, frame)?;
            out.push(g);
            out.push(inv);
        }
    }
    out.sort_by(|a, b| (a.power_k, &a.h).cmp(&(b.power_k, &b.h)));
    out.dedup();
    Ok(out)
}

/// `0` and the standard basis vectors of `H'`.
pub fn standard_translations(frame: &ExtensionFrame) -> Vec<Vec<Int>> {
    let d = frame.rank();
    let mut out = vec![vec![Int::from(0); d]];
    for i in 0..d {
        let mut h = vec![Int::from(0); d];
        h[i] = Int::from(1);
        out.push(h);
    }
    out
}

/// Conjugation by the matrix of `γ`.
pub fn ad_matrix(frame: &ExtensionFrame, g: &GammaElement, n: &QMat) -> Result<QMat> {
    let gm = g.matrix(frame)?;
    Ok(gm.mul(n).mul(&gm.inverse().expect("unipotent")))
}
