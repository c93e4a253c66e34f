//! The fans built from degeneration data: the relatively complete cube-cell
//! fan `Σ₃`, its coarser relative `Σ₂`, the ray fans `Σ₀`, `Σ₁` and the
//! Néron fan, and the checks relating them.

pub mod checks;
pub mod condition;
pub mod corpus;
pub mod cube;
pub mod gamma;
pub mod params;
pub mod rays;

pub use checks::{
    admissible_cone, fan_relations_check, relative_completeness_check, strong_compatibility_check, CheckLine,
    CompletenessItem, CompletenessReport, RelationsReport, Status, StrongCompatibilityReport,
};
pub use condition::{check_type_condition, type_condition, TypeCondition};
pub use corpus::{generate_corpus, CorpusItem};
pub use cube::{Corruption, CubeFan};
pub use gamma::{ad_action, generating_set, inverse, standard_translations};
pub use params::{compute_pq, CellIndex, SigmaParams, PQ};
pub use rays::{neron_lattice, RayFan, RayKind};

use crate::cones::LazyFan;
use crate::error::{Error, Result};
use crate::hodge::ExtensionFrame;
use crate::linalg::ZLattice;

/// `Σ₃` for the given data.
pub fn sigma3(params: SigmaParams) -> CubeFan {
    CubeFan::new("sigma3", params)
}

/// `Σ₂`: cube cells over the Hermite basis of `N'(H')`. Requires the full
/// condition, Hodge clause included.
pub fn sigma2(frame: &ExtensionFrame) -> Result<CubeFan> {
    let c = type_condition(frame)?;
    if !c.holds() {
        return Err(Error::TypeConditionViolated(format!(
            "N'^2 = 0: {}, gr_0 of type (0,0): {} (offending {:?})",
            c.square_zero, c.gr0_type_00, c.offending
        )));
    }
    sigma2_structural(frame)
}

/// `Σ₂` requiring only `N'² = 0`, the clause the construction uses.
pub fn sigma2_structural(frame: &ExtensionFrame) -> Result<CubeFan> {
    let np = frame.n_prime();
    if !np.mul(np).is_zero() {
        return Err(Error::TypeConditionViolated("N'^2 != 0".into()));
    }
    let basis = ZLattice::from_generators(frame.rank(), &np.columns()).basis();
    Ok(CubeFan::new("sigma2", SigmaParams::on_grid(frame, basis)?))
}

pub fn sigma0(frame: &ExtensionFrame) -> RayFan {
    RayFan::new(frame, RayKind::Sigma0)
}

pub fn sigma1(frame: &ExtensionFrame) -> RayFan {
    RayFan::new(frame, RayKind::Sigma1)
}

pub fn sigma1_neron(frame: &ExtensionFrame) -> RayFan {
    RayFan::new(frame, RayKind::Neron)
}

/// `L = H' + N'(H') + (Néron lattice)`: large enough for the Néron rays to
/// be members of `Σ₃`.
pub fn neron_enlarged_lattice(frame: &ExtensionFrame) -> ZLattice {
    let d = frame.rank();
    let mut gens = ZLattice::standard(d).basis();
    gens.extend(frame.n_prime().columns());
    gens.extend(neron_lattice(frame).basis());
    ZLattice::from_generators(d, &gens)
}

/// Fan by name: `sigma0|sigma1|sigma2|neron|sigma3`.
pub fn by_name(frame: &ExtensionFrame, name: &str, lattice: Option<ZLattice>) -> Result<Box<dyn LazyFan>> {
    Ok(match name {
        "sigma0" => Box::new(sigma0(frame)),
        "sigma1" => Box::new(sigma1(frame)),
        "neron" => Box::new(sigma1_neron(frame)),
        "sigma2" => Box::new(sigma2(frame)?),
        "sigma3" => Box::new(sigma3(SigmaParams::with_lattice(frame, lattice)?)),
        other => return Err(Error::InvalidData(format!("unknown fan {other}"))),
    })
}
