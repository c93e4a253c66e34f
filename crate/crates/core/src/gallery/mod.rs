//! The worked example: Künneth data for `Y² × E`, the equivalence relation on
//! the naive quotient, its non-Hausdorff witness, and the slit.

pub mod kunneth;
pub mod zucker;

pub use kunneth::{example9_data, kunneth, KFactor};
pub use zucker::{equivalence, equivalent, hausdorff_witness, slit_member, Equivalence, HausdorffCertificate, TCoord, ZuckerPoint};
