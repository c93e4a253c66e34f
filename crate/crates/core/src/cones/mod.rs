//! Sharp rational polyhedral cones in `g`, finite and lazy fans, and
//! subdivision against a fan.

pub mod cone;
pub mod dd;
pub mod fan;
pub mod gspace;
pub mod subdivide;

pub use cone::{flatten, Cone, Functional, SparseRay};
pub use dd::extreme_rays;
pub use fan::{check_fan, FanReport, FanViolation, FiniteFan, Grid, LazyFan, Window};
pub use gspace::GSpace;
pub use subdivide::{subdivide_against, verify_cover, Piece};
