//! Relative monodromy filtrations for the two-step weight filtration, and the
//! linear criteria for their existence and for commutation.

use crate::error::{Error, Result};
use crate::linalg::rat::{sub_vec, zero_vec};
use crate::linalg::{QMat, Rat, Subspace};

use super::data::{inclusion, ExtensionFrame};
use super::filtration::{check_relative, monodromy_filtration, Filtration};
use super::nilpotent::NilpotentEndo;

/// Outcome of the existence criterion together with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// `N(e) = R(a) + u` with `u ∈ W''_{-2}`.
    Admissible { a: Vec<Rat>, u: Vec<Rat> },
    /// `N(e)` is not in `Im R + W''_{-2}`.
    NotAdmissible { ne: Vec<Rat> },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible { .. })
    }
}

/// Weight data attached to a restriction `R ∈ g'`: `W(R)[-k]`, `Im R` and
/// `W(R)[-k]_{-2}`.
struct RestrictionData {
    w: Filtration,
    w_m2: Subspace,
}

fn restriction_data(frame: &ExtensionFrame, r: &QMat) -> Result<RestrictionData> {
    if r == frame.n_prime() {
        return Ok(RestrictionData {
            w: frame.w_prime.clone(),
            w_m2: frame.w_prime_m2.clone(),
        });
    }
    let nil = NilpotentEndo::new(r.clone())?;
    let w = monodromy_filtration(&nil, 0).shift(-frame.weight_k());
    let w_m2 = w.get(-2);
    Ok(RestrictionData { w, w_m2 })
}

fn decide(rd: &RestrictionData, r: &QMat, ne: &[Rat]) -> Admissibility {
    let d = ne.len();
    let mut cols = r.columns();
    let nr = cols.len();
    cols.extend(rd.w_m2.basis().iter().cloned());
    if cols.is_empty() {
        return if ne.iter().all(num_traits::Zero::is_zero) {
            Admissibility::Admissible { a: zero_vec(d), u: zero_vec(d) }
        } else {
            Admissibility::NotAdmissible { ne: ne.to_vec() }
        };
    }
    match QMat::with_cols(d, &cols).solve(ne) {
        Some(x) => {
            let a = x[..nr].to_vec();
            let u = sub_vec(ne, &r.mul_vec(&a));
            Admissibility::Admissible { a, u }
        }
        None => Admissibility::NotAdmissible { ne: ne.to_vec() },
    }
}

/// Existence criterion for `M(N, W)` when `N|H' = N'`:
/// `N(e) ∈ Im N' + W'_{-2}`.
pub fn admissible_direction(frame: &ExtensionFrame, n: &QMat) -> Result<bool> {
    Ok(admissibility(frame, n)?.is_admissible())
}

pub fn admissibility(frame: &ExtensionFrame, n: &QMat) -> Result<Admissibility> {
    let ne = frame.split_exact(n)?;
    let rd = restriction_data(frame, frame.n_prime())?;
    Ok(decide(&rd, frame.n_prime(), &ne))
}

/// `M(N, W)` for `N` restricting to `N'`, or `None` when it does not exist.
pub fn relative_monodromy_filtration(frame: &ExtensionFrame, n: &QMat) -> Result<Option<Filtration>> {
    frame.split_exact(n)?;
    rmf_general(frame, n)
}

/// `M(N, W)` for any `N ∈ g` mapping `H` into `H'`, whatever its restriction.
pub fn rmf_general(frame: &ExtensionFrame, n: &QMat) -> Result<Option<Filtration>> {
    let (r, ne) = frame.split(n)?;
    let rd = restriction_data(frame, &r)?;
    match decide(&rd, &r, &ne) {
        Admissibility::Admissible { a, .. } => build(frame, &rd.w, n, &a).map(Some),
        Admissibility::NotAdmissible { .. } => Ok(None),
    }
}

/// Builds `M` from a chosen splitting `a` (`N(e) - R(a) ∈ W''_{-2}`):
/// `M_j = W''_j` for `j < 0` and `W''_j + Q·(e - a)` for `j ≥ 0`.
pub fn rmf_with_splitting(frame: &ExtensionFrame, n: &QMat, a: &[Rat]) -> Result<Filtration> {
    let (r, ne) = frame.split(n)?;
    let rd = restriction_data(frame, &r)?;
    if !rd.w_m2.contains(&sub_vec(&ne, &r.mul_vec(a))) {
        return Err(Error::PreconditionViolated("a does not split N(e)".into()));
    }
    build(frame, &rd.w, n, a)
}

fn build(frame: &ExtensionFrame, w_restr: &Filtration, n: &QMat, a: &[Rat]) -> Result<Filtration> {
    let d = frame.rank();
    let lifted = w_restr.push_forward(&inclusion(d));
    let mut e_tilde: Vec<Rat> = a.iter().map(|x| -x).collect();
    e_tilde.push(Rat::from_integer(1.into()));
    let line = Subspace::span(d + 1, &[e_tilde]);
    let m = lifted.plus_from(&line, 0);
    check_relative(n, &m, &frame.w)
        .map_err(|why| Error::InvariantViolation(format!("constructed M fails its axioms: {why}")))?;
    Ok(m)
}

/// `N1 N2 = N2 N1` iff `N1(e) - N2(e) ∈ Ker N'`; cross-checked against the
/// commutator.
pub fn commutes_by_criterion(frame: &ExtensionFrame, n1: &QMat, n2: &QMat) -> Result<bool> {
    let e1 = frame.split_exact(n1)?;
    let e2 = frame.split_exact(n2)?;
    let by_criterion = frame.ker_n.contains(&sub_vec(&e1, &e2));
    let direct = n1.commutator(n2).is_zero();
    if by_criterion != direct {
        return Err(Error::InvariantViolation(format!(
            "commutation criterion says {by_criterion}, commutator says {direct}"
        )));
    }
    Ok(by_criterion)
}
