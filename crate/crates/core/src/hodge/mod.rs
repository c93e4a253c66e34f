//! Filtrations, pairings, nilpotent endomorphisms and relative monodromy
//! filtrations for a two-step weight filtration `0 ⊂ H' ⊂ H`.

pub mod data;
pub mod filtration;
pub mod json;
pub mod nilpotent;
pub mod pairing;
pub mod relative;

pub use data::{gamma_power, DegenerationData, ExtensionFrame, GammaElement, HodgeNumbers};
pub use json::{filtration_json, DegenerationJson};
pub use filtration::{check_monodromy, check_relative, monodromy_filtration, Filtration};
pub use nilpotent::{log_unipotent, NilpotentEndo};
pub use pairing::{Pairing, Symmetry};
pub use relative::{
    admissibility, admissible_direction, commutes_by_criterion, relative_monodromy_filtration,
    rmf_general, rmf_with_splitting, Admissibility,
};
