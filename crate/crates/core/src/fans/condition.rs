//! The condition "`N'² = 0` and `gr^{W'}_0` is of type `(0,0)`".

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hodge::ExtensionFrame;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCondition {
    /// `N'² = 0`, computed.
    pub square_zero: bool,
    /// Declared Hodge numbers of `gr^{W'}_0` are concentrated in `(0,0)`.
    pub gr0_type_00: bool,
    /// Offending types `(p, q, h^{p,q})` in `gr^{W'}_0`.
    pub offending: Vec<(i32, i32, usize)>,
}

impl TypeCondition {
    pub fn holds(&self) -> bool {
        self.square_zero && self.gr0_type_00
    }
}

pub fn type_condition(frame: &ExtensionFrame) -> Result<TypeCondition> {
    let limit = frame.base.limit_hodge_numbers.as_ref().ok_or(Error::MissingHodgeData)?;
    let np = frame.n_prime();
    let square_zero = np.mul(np).is_zero();
    let offending: Vec<(i32, i32, usize)> = limit
        .get(&0)
        .map(|hn| hn.iter().filter(|(&(p, q), &c)| c > 0 && (p, q) != (0, 0)).map(|(&(p, q), &c)| (p, q, c)).collect())
        .unwrap_or_default();
    Ok(TypeCondition { square_zero, gr0_type_00: offending.is_empty(), offending })
}

pub fn check_type_condition(frame: &ExtensionFrame) -> Result<bool> {
    Ok(type_condition(frame)?.holds())
}
