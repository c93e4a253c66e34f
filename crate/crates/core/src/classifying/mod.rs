//! Membership predicates for the classifying spaces, exact over `Q(i)`.

pub mod gaussian;
pub mod period;

pub use gaussian::{format_grat, parse_grat, CMat, GRat};
pub use period::{nilpotent_orbit_test, LevelJson, OrbitReport, PeriodPoint, DEFAULT_SAMPLES};
