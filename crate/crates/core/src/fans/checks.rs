//! Report-producing checks: strong compatibility with `Γ`, relative
//! completeness on a corpus, and the inclusion/refinement relations between
//! the fans.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cones::{subdivide_against, Cone, GSpace, LazyFan, Window};
use crate::error::{Error, Result};
use crate::hodge::{rmf_general, ExtensionFrame, GammaElement};
use crate::linalg::rat::{format_vec, ri};
use crate::linalg::{Int, QMat};

use super::condition::type_condition;
use super::corpus::CorpusItem;
use super::cube::CubeFan;
use super::params::{CellIndex, SigmaParams};
use super::{neron_enlarged_lattice, sigma0, sigma1, sigma1_neron, sigma2_structural, sigma3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    InterpretedPass,
    Precondition,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Precondition)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

impl CheckLine {
    pub fn new(name: &str, status: Status, witness: Value) -> Self {
        Self { name: name.into(), status, witness }
    }
}

/// Sampled admissibility: every nonzero face has two relative-interior points
/// whose relative monodromy filtrations exist and coincide.
pub fn admissible_cone(frame: &ExtensionFrame, c: &Cone) -> Result<bool> {
    for f in c.faces() {
        if f.is_zero() {
            continue;
        }
        let p1 = f.interior_point();
        let p2 = p1.add(&f.ray_matrices()[0]);
        let (Some(m1), Some(m2)) = (rmf_general(frame, &p1)?, rmf_general(frame, &p2)?) else {
            return Ok(false);
        };
        if m1 != m2 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletenessItem {
    pub index: usize,
    pub kind: &'static str,
    pub status: Status,
    pub pieces: usize,
    pub hosts: Vec<Cone>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub fan: String,
    pub covered: usize,
    pub no_cover: usize,
    pub precondition: usize,
    pub items: Vec<CompletenessItem>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.no_cover == 0
    }
}

pub fn relative_completeness_check(
    frame: &ExtensionFrame,
    fan: &dyn LazyFan,
    corpus: &[CorpusItem],
) -> CompletenessReport {
    let gs = GSpace::new(frame);
    let items: Vec<CompletenessItem> = corpus
        .par_iter()
        .enumerate()
        .map(|(index, item)| {
            let done = |status, pieces, hosts, detail: Option<String>| CompletenessItem {
                index,
                kind: item.kind,
                status,
                pieces,
                hosts,
                detail,
            };
            let cone = match Cone::from_generators(&gs, &item.generators) {
                Ok(c) => c,
                Err(e) => return done(Status::Precondition, 0, vec![], Some(e.to_string())),
            };
            match admissible_cone(frame, &cone) {
                Ok(true) => {}
                Ok(false) => {
                    return done(Status::Precondition, 0, vec![], Some("cone is not admissible".into()))
                }
                Err(e) => return done(Status::Precondition, 0, vec![], Some(e.to_string())),
            }
            match subdivide_against(&cone, fan) {
                Ok(pieces) => {
                    let hosts = pieces.iter().map(|p| p.host.clone()).collect();
                    done(Status::Pass, pieces.len(), hosts, None)
                }
                Err(Error::PreconditionViolated(why)) => done(Status::Precondition, 0, vec![], Some(why)),
                Err(e) => done(Status::Fail, 0, vec![], Some(format!("{e}; cone {cone:?}"))),
            }
        })
        .collect();
    let count = |s: Status| items.iter().filter(|i| i.status == s).count();
    CompletenessReport {
        fan: fan.name().into(),
        covered: count(Status::Pass),
        no_cover: count(Status::Fail),
        precondition: count(Status::Precondition),
        items,
    }
}

/// An element of `Γ` whose logarithm lies on the ray through `x`, if one
/// exists with `(γ')`-exponent at most `max_k`.
pub fn gamma_on_ray(frame: &ExtensionFrame, x: &QMat, max_k: i64) -> Option<GammaElement> {
    let (r, _) = frame.split(x).ok()?;
    let t = frame.restriction_scale(&r)?;
    let d = frame.rank();
    let candidates: Vec<crate::linalg::Rat> = if t.is_zero() {
        (1..=max_k).map(ri).collect()
    } else if t.is_positive() {
        (1..=max_k).map(|k| ri(k) / &t).collect()
    } else {
        return None;
    };
    for lambda in candidates {
        let y = x.scale(&lambda);
        let g = y.exp_nilpotent()?;
        if !g.is_integral() {
            continue;
        }
        let k = (&lambda * &t).to_integer();
        let h: Vec<Int> = g.col(d)[..d].iter().map(|v| v.to_integer()).collect();
        let elem = GammaElement { power_k: i64::try_from(k).ok()?, h };
        if elem.matrix(frame).ok()? == g {
            return Some(elem);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrongCompatibilityReport {
    pub cells: usize,
    pub gamma_elements: usize,
    /// (a): `Ad(γ)σ` is a member for every window cell and generator.
    pub a_status: Status,
    pub a_violations: Vec<Value>,
    /// Index-level action agrees with cone conjugation.
    pub action_mismatches: Vec<Value>,
    /// (b): every extreme ray carries `log γ` for some `γ ∈ Γ`.
    pub b_status: Status,
    pub b_missing: Vec<Value>,
}

impl StrongCompatibilityReport {
    pub fn passed(&self) -> bool {
        !self.a_status.is_failure() && !self.b_status.is_failure() && self.action_mismatches.is_empty()
    }
}

pub fn strong_compatibility_check(
    fan: &CubeFan,
    gammas: &[GammaElement],
    window: &Window,
) -> Result<StrongCompatibilityReport> {
    let params = fan.params();
    let frame = &params.frame;
    let ids = fan.window_indices(window)?;
    let mats: Vec<(GammaElement, QMat, QMat)> = gammas
        .iter()
        .map(|g| {
            let m = g.matrix(frame)?;
            let inv = m.inverse().expect("unipotent");
            Ok((g.clone(), m, inv))
        })
        .collect::<Result<_>>()?;
    let per_cell: Vec<(Vec<Value>, Vec<Value>, Vec<Value>)> = ids
        .par_iter()
        .map(|idx| {
            let mut a_bad = Vec::new();
            let mut mismatch = Vec::new();
            let mut b_bad = Vec::new();
            let cell = match fan.cell(idx) {
                Ok(c) => c,
                Err(e) => return (vec![json!({"index": idx, "error": e.to_string()})], vec![], vec![]),
            };
            for (g, m, inv) in &mats {
                let conj = cell.conjugate(m, inv);
                if !fan.is_member(&conj) {
                    a_bad.push(json!({"index": idx, "gamma": gamma_json(g), "image": conj}));
                }
                if !fan.is_corrupted() {
                    if let Err(e) = super::gamma::ad_action(params, g, idx) {
                        mismatch.push(json!({"index": idx, "gamma": gamma_json(g), "error": e.to_string()}));
                    }
                }
            }
            for ray in cell.ray_matrices() {
                if gamma_on_ray(frame, &ray, 1000).is_none() {
                    b_bad.push(json!({"index": idx, "ray": ray.to_strings()}));
                }
            }
            (a_bad, mismatch, b_bad)
        })
        .collect();
    let mut a_violations = Vec::new();
    let mut action_mismatches = Vec::new();
    let mut b_missing = Vec::new();
    for (a, m, b) in per_cell {
        a_violations.extend(a);
        action_mismatches.extend(m);
        b_missing.extend(b);
    }
    Ok(StrongCompatibilityReport {
        cells: ids.len(),
        gamma_elements: gammas.len(),
        a_status: Status::of(a_violations.is_empty()),
        b_status: if b_missing.is_empty() { Status::InterpretedPass } else { Status::Fail },
        a_violations,
        action_mismatches,
        b_missing,
    })
}

pub fn gamma_json(g: &GammaElement) -> Value {
    json!({"k": g.power_k, "h": g.h.iter().map(ToString::to_string).collect::<Vec<_>>()})
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationsReport {
    pub lines: Vec<CheckLine>,
}

impl RelationsReport {
    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }

    /// All relation lines (everything but the Hodge-type precondition) pass.
    pub fn relations_hold(&self) -> bool {
        self.lines.iter().filter(|l| l.name != "type_condition.hodge_type").all(|l| l.status == Status::Pass)
    }
}

fn rays_in(fan: &dyn LazyFan, rays: &[Cone]) -> Vec<Value> {
    rays.par_iter().filter(|r| !fan.is_member(r)).map(|r| json!(r)).collect()
}

/// The inclusion and refinement relations among `Σ₀, Σ₁, Σ₂, Σ₃` and the
/// Néron fan on a window. Requires `N'² = 0`; the Hodge-type clause is
/// reported on its own line.
pub fn fan_relations_check(frame: &ExtensionFrame, bound: i64) -> Result<RelationsReport> {
    let cond = type_condition(frame)?;
    if !cond.square_zero {
        return Err(Error::TypeConditionViolated("N'^2 != 0".into()));
    }
    let mut lines = vec![CheckLine::new("type_condition.square_zero", Status::Pass, json!(null))];
    lines.push(CheckLine::new(
        "type_condition.hodge_type",
        if cond.gr0_type_00 { Status::Pass } else { Status::Precondition },
        json!({"offending": cond.offending}),
    ));
    let params = SigmaParams::default_params(frame)?;
    let pq_equal = params.pq.p == params.pq.q;
    lines.push(CheckLine::new(
        "p_equals_q",
        Status::of(pq_equal && params.section.is_empty()),
        json!({"dim_p": params.pq.p.dim(), "dim_q": params.pq.q.dim(), "definitions_agree": params.pq.agree()}),
    ));
    let s3 = sigma3(params);
    let s2 = sigma2_structural(frame)?;
    let s0 = sigma0(frame);
    let s1 = sigma1(frame);
    let ne = sigma1_neron(frame);
    let w = Window::new(bound);
    let s0_rays = s0.window_cells(&w);
    let s1_rays = s1.window_cells(&w);

    let bad = rays_in(&s1, &s0_rays);
    lines.push(CheckLine::new("sigma0_in_sigma1", Status::of(bad.is_empty()), json!({"checked": s0_rays.len(), "violations": bad})));
    let bad = rays_in(&s2, &s0_rays);
    lines.push(CheckLine::new("sigma0_in_sigma2", Status::of(bad.is_empty()), json!({"checked": s0_rays.len(), "violations": bad})));
    let bad = rays_in(&s3, &s1_rays);
    lines.push(CheckLine::new("sigma1_in_sigma3", Status::of(bad.is_empty()), json!({"checked": s1_rays.len(), "violations": bad})));

    let s2_cells = s2.window_cells(&w);
    let refine: Vec<Value> = s2_cells
        .par_iter()
        .filter_map(|c| match subdivide_against(c, &s3) {
            Ok(pieces) => {
                let not_cells: Vec<&Cone> = pieces.iter().filter(|p| p.cone != p.host).map(|p| &p.cone).collect();
                (!not_cells.is_empty()).then(|| json!({"cell": c, "pieces_not_cells": not_cells}))
            }
            Err(e) => Some(json!({"cell": c, "error": e.to_string()})),
        })
        .collect();
    lines.push(CheckLine::new(
        "sigma2_refined_by_sigma3",
        Status::of(refine.is_empty()),
        json!({"checked": s2_cells.len(), "violations": refine}),
    ));

    let big = sigma3(SigmaParams::with_lattice(frame, Some(neron_enlarged_lattice(frame)))?);
    let default_l = s3.params().l.clone();
    let ne_rays = ne.window_cells(&w);
    let bad = rays_in(&big, &ne_rays);
    lines.push(CheckLine::new(
        "neron_in_sigma3",
        Status::of(bad.is_empty()),
        json!({
            "checked": ne_rays.len(),
            "violations": bad,
            "default_lattice_suffices": ne.lattice().is_sublattice_of(&default_l),
        }),
    ));
    Ok(RelationsReport { lines })
}

/// Compact description of a cell index for reports.
pub fn index_json(idx: &CellIndex) -> Value {
    json!({"x": format_vec(&idx.x), "n": idx.n.iter().map(ToString::to_string).collect::<Vec<_>>()})
}

/// `N` normalized to restriction `N'`, for witnesses.
pub fn normalized_value(params: &SigmaParams, n: &QMat) -> Option<Vec<String>> {
    params.normalize(n).map(|(_, w)| format_vec(&w))
}
