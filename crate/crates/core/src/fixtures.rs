//! Built-in degeneration data used by tests, the acceptance run and the CLI.
//!
//! * `fix_a`: `H' = Z²`, `γ' = [[1,1],[0,1]]`, weight −1, `⟨e₂, e₁⟩' = 1`.
//! * `fix_b`: as `fix_a` with `γ' = [[1,2],[0,1]]`, so `N'(H') = 2Z·e₁` is
//!   strictly smaller than `Ker N' ∩ H'`.
//! * `fix_d`: `H' = Z³`, `γ' = 1 + J + J²`, weight −2, an invariant symmetric
//!   form. Here `N'² ≠ 0` and the lattice `L = H' + N'(H')` is strictly
//!   bigger than `H'`, which makes the section `s` and `a(x)` nontrivial.
//! * `trivial`: `H' = Z²`, `γ' = 1`, weight −1.
//! * `trivial_rank1`: `H' = Z`, `γ' = 1`, weight −2.

use std::collections::BTreeMap;

use crate::hodge::{DegenerationData, ExtensionFrame, HodgeNumbers, Pairing, Symmetry};
use crate::linalg::QMat;

fn hn(entries: &[(i32, i32, usize)]) -> HodgeNumbers {
    entries.iter().map(|&(p, q, c)| ((p, q), c)).collect()
}

fn limit(entries: &[(i32, &[(i32, i32, usize)])]) -> Option<BTreeMap<i32, HodgeNumbers>> {
    Some(entries.iter().map(|(w, e)| (*w, hn(e))).collect())
}

fn frame(data: DegenerationData) -> ExtensionFrame {
    ExtensionFrame::new(data).expect("built-in fixture is valid")
}

fn symplectic_plane() -> Pairing {
    Pairing::new(QMat::from_ints(&[&[0, -1], &[1, 0]]), Symmetry::Alternating).expect("valid gram")
}

pub fn fix_a_data() -> DegenerationData {
    DegenerationData::new(
        symplectic_plane(),
        QMat::from_ints(&[&[1, 1], &[0, 1]]),
        -1,
        hn(&[(0, -1, 1), (-1, 0, 1)]),
        limit(&[(-2, &[(-1, -1, 1)]), (0, &[(0, 0, 1)])]),
    )
    .expect("fixture")
}

pub fn fix_a() -> ExtensionFrame {
    frame(fix_a_data())
}

pub fn fix_b() -> ExtensionFrame {
    frame(
        DegenerationData::new(
            symplectic_plane(),
            QMat::from_ints(&[&[1, 2], &[0, 1]]),
            -1,
            hn(&[(0, -1, 1), (-1, 0, 1)]),
            limit(&[(-2, &[(-1, -1, 1)]), (0, &[(0, 0, 1)])]),
        )
        .expect("fixture"),
    )
}

pub fn fix_d_data() -> DegenerationData {
    DegenerationData::new(
        Pairing::new(QMat::from_ints(&[&[0, 0, 2], &[0, -2, -1], &[2, -1, 0]]), Symmetry::Symmetric)
            .expect("valid gram"),
        QMat::from_ints(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]),
        -2,
        hn(&[(0, -2, 1), (-1, -1, 1), (-2, 0, 1)]),
        limit(&[(-4, &[(-2, -2, 1)]), (-2, &[(-1, -1, 1)]), (0, &[(0, 0, 1)])]),
    )
    .expect("fixture")
}

pub fn fix_d() -> ExtensionFrame {
    frame(fix_d_data())
}

pub fn trivial() -> ExtensionFrame {
    frame(
        DegenerationData::new(
            symplectic_plane(),
            QMat::identity(2),
            -1,
            hn(&[(0, -1, 1), (-1, 0, 1)]),
            limit(&[(-1, &[(0, -1, 1), (-1, 0, 1)])]),
        )
        .expect("fixture"),
    )
}

pub fn trivial_rank1() -> ExtensionFrame {
    frame(
        DegenerationData::new(
            Pairing::new(QMat::identity(1), Symmetry::Symmetric).expect("valid gram"),
            QMat::identity(1),
            -2,
            hn(&[(-1, -1, 1)]),
            limit(&[(-2, &[(-1, -1, 1)])]),
        )
        .expect("fixture"),
    )
}

/// The rank-20 Künneth frame of the worked example.
pub fn example9() -> ExtensionFrame {
    frame(crate::gallery::kunneth::example9_data().expect("Künneth data is valid"))
}

pub fn by_name(name: &str) -> Option<ExtensionFrame> {
    Some(match name {
        "fix-a" => fix_a(),
        "fix-b" => fix_b(),
        "fix-d" => fix_d(),
        "trivial" => trivial(),
        "trivial-rank1" => trivial_rank1(),
        "example9" => example9(),
        _ => return None,
    })
}
