//! Exact construction and verification of relatively complete fans for
//! degenerating Hodge data: relative monodromy filtrations, admissible
//! nilpotent cones, the cube-cell fan and its comparison fans, classifying
//! space predicates, and a worked Künneth example.

pub mod classifying;
pub mod cones;
pub mod error;
pub mod fans;
pub mod fixtures;
pub mod gallery;
pub mod hodge;
pub mod linalg;

pub use error::{Error, Result};
