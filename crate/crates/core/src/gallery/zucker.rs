//! The set-level quotient model with its equivalence relation, the
//! non-Hausdorff witness, and the slit.
//!
//! `q = exp(2πi·τ)` is carried through `τ` exactly, so `log(q)/(2πi) = τ`
//! on the chosen branch. Coordinates `t_j = base_j · q^{k_j}` are kept as
//! `(base, k)` pairs; `t'_j/t_j ∈ q^Z` is read as `base'_j = base_j`, i.e.
//! bases are treated as generic with respect to `q`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::classifying::gaussian::{format_grat, g, is_gaussian_integer, real, GRat};
use crate::linalg::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCoord {
    pub base: GRat,
    pub q_exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZuckerPoint {
    pub t: [TCoord; 4],
    pub a1: GRat,
    pub a2: GRat,
    /// `None` is the degenerate fibre `q = 0`.
    pub tau: Option<GRat>,
}

/// Why two points are (or are not) equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `q ≠ 0`, witnessed by `b ∈ Z[i]`.
    Generic { b: GRat },
    /// `q = 0`.
    Degenerate,
    Not(&'static str),
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        !matches!(self, Equivalence::Not(_))
    }
}

impl ZuckerPoint {
    pub fn limit(&self) -> Self {
        Self { tau: None, ..self.clone() }
    }
}

pub fn equivalence(p: &ZuckerPoint, p2: &ZuckerPoint) -> Equivalence {
    match (&p.tau, &p2.tau) {
        (Some(tau), Some(tau2)) => {
            let dt = tau2 - tau;
            if !(dt.im.is_zero() && dt.re.is_integer()) {
                return Equivalence::Not("q' != q");
            }
            if p.t.iter().zip(&p2.t).any(|(a, b)| a.base != b.base) {
                return Equivalence::Not("t'_j/t_j not in q^Z");
            }
            // a'_2 - a_2 - b = 0 determines b
            let b = &p2.a2 - &p.a2;
            if !is_gaussian_integer(&b) {
                return Equivalence::Not("a'_2 - a_2 not in Z[i]");
            }
            if !is_gaussian_integer(&(&p2.a1 - &p.a1 - &b * tau)) {
                return Equivalence::Not("a'_1 - a_1 - b*tau not in Z[i]");
            }
            Equivalence::Generic { b }
        }
        (None, None) => {
            if p.t != p2.t {
                Equivalence::Not("t' != t")
            } else if p.a2 != p2.a2 {
                Equivalence::Not("a'_2 != a_2")
            } else if !is_gaussian_integer(&(&p2.a1 - &p.a1)) {
                Equivalence::Not("a'_1 - a_1 not in Z[i]")
            } else {
                Equivalence::Degenerate
            }
        }
        _ => Equivalence::Not("exactly one of q, q' is zero"),
    }
}

pub fn equivalent(p: &ZuckerPoint, p2: &ZuckerPoint) -> bool {
    equivalence(p, p2).holds()
}

/// `q = 0 ⇒ a₂ = 0`.
pub fn slit_member(p: &ZuckerPoint) -> bool {
    p.tau.is_some() || p.a2.is_zero()
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessStep {
    pub n: i64,
    pub tau: String,
    pub equivalent: bool,
    pub b: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HausdorffCertificate {
    pub c: String,
    pub steps: Vec<WitnessStep>,
    /// Along each sequence only `Im τ_n = n` moves, strictly increasing, so
    /// `|q_n| = exp(-2πn) → 0` and the limits are the points with `q = 0`.
    pub limits_identified: bool,
    pub limits_equivalent: bool,
    pub limit_reason: String,
    pub passed: bool,
}

pub fn base_t() -> [TCoord; 4] {
    std::array::from_fn(|j| TCoord { base: real(Rat::from_integer((j as i64 + 2).into())), q_exponent: 0 })
}

/// `(t,(c,1),q_n) ~ (t,(0,0),q_n)` for `q_n = exp(2πi(c+ni))`, yet the limits
/// `(t,(c,1),0)` and `(t,(0,0),0)` are not equivalent.
pub fn hausdorff_witness(c: &Rat, t: &[TCoord; 4], ns: impl IntoIterator<Item = i64>) -> HausdorffCertificate {
    let first = |tau: Option<GRat>| ZuckerPoint { t: t.clone(), a1: real(c.clone()), a2: real(Rat::one()), tau };
    let second = |tau: Option<GRat>| ZuckerPoint { t: t.clone(), a1: real(Rat::zero()), a2: real(Rat::zero()), tau };
    let mut steps = Vec::new();
    let mut last_im: Option<Rat> = None;
    let mut limits_identified = true;
    for n in ns {
        let tau = g(c.clone(), Rat::from_integer(n.into()));
        if tau.im <= Rat::zero() || last_im.as_ref().is_some_and(|l| *l >= tau.im) {
            limits_identified = false;
        }
        last_im = Some(tau.im.clone());
        let eq = equivalence(&first(Some(tau.clone())), &second(Some(tau.clone())));
        let b = match &eq {
            Equivalence::Generic { b } => Some(format_grat(b)),
            _ => None,
        };
        steps.push(WitnessStep { n, tau: format_grat(&tau), equivalent: eq.holds(), b });
    }
    let lim = equivalence(&first(None), &second(None));
    let limit_reason = match &lim {
        Equivalence::Not(why) => (*why).to_string(),
        _ => "equivalent".to_string(),
    };
    let passed = steps.iter().all(|s| s.equivalent) && limits_identified && !lim.holds();
    HausdorffCertificate {
        c: crate::linalg::rat::format_rat(c),
        steps,
        limits_identified,
        limits_equivalent: lim.holds(),
        limit_reason,
        passed,
    }
}
