//! The check suites and the non-check commands (`build`, `rmf`, `gallery`).

use std::str::FromStr;

use serde_json::{json, Value};

use relfan::cones::{check_fan, GSpace, LazyFan, Window};
use relfan::error::Error;
use relfan::fans::{
    self, fan_relations_check, generate_corpus, generating_set, relative_completeness_check, standard_translations,
    strong_compatibility_check, CheckLine, CubeFan, SigmaParams, Status,
};
use relfan::fixtures;
use relfan::gallery::zucker::{base_t, hausdorff_witness, slit_member, ZuckerPoint};
use relfan::gallery::{example9_data, kunneth::example9_factors};
use relfan::classifying::gaussian::{g, real};
use relfan::hodge::{admissibility, check_relative, filtration_json, rmf_general, Admissibility, DegenerationJson};
use relfan::linalg::rat::{format_vec, rat, ri};
use relfan::linalg::QMat;

use crate::spec_file::Loaded;
use crate::CliError;

/// Violations listed in full in a witness; the count is always given.
const WITNESS_LIMIT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Gamma,
    Completeness,
    Relations,
    Gallery,
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "gamma" => Suite::Gamma,
            "completeness" => Suite::Completeness,
            "relations" => Suite::Relations,
            "gallery" => Suite::Gallery,
            other => return Err(CliError::Input(format!("unknown suite {other}"))),
        })
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Gamma => "gamma",
            Suite::Completeness => "completeness",
            Suite::Relations => "relations",
            Suite::Gallery => "gallery",
        }
    }

    pub const ALL: [Suite; 5] = [Suite::Axioms, Suite::Gamma, Suite::Completeness, Suite::Relations, Suite::Gallery];
}

/// Library errors at command level: malformed input exits 2, violated
/// mathematical invariants exit 3.
pub fn classify(e: Error) -> CliError {
    match e {
        Error::InvariantViolation(_)
        | Error::NotInG(_)
        | Error::NotNilpotent
        | Error::NotCommutative
        | Error::NotSharp
        | Error::NotInGamma(_) => CliError::Invariant(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

/// Missing hypotheses of a fan construction become report lines.
fn is_precondition(e: &Error) -> bool {
    matches!(e, Error::TypeConditionViolated(_) | Error::MissingHodgeData)
}

fn truncated<T: serde::Serialize>(items: &[T]) -> Value {
    json!(items.iter().take(WITNESS_LIMIT).collect::<Vec<_>>())
}

fn window(l: &Loaded) -> Window {
    Window { bound: l.spec.window, cosets: l.cosets.clone() }
}

fn params(l: &Loaded) -> Result<SigmaParams, CliError> {
    SigmaParams::with_lattice(&l.frame, l.lattice.clone()).map_err(classify)
}

fn cube_fan(l: &Loaded) -> Result<CubeFan, CliError> {
    let fan = fans::sigma3(params(l)?);
    Ok(match &l.spec.corruption {
        Some(c) => fan.corrupted(c.clone()),
        None => fan,
    })
}

fn build_fan(l: &Loaded, name: &str) -> Result<Result<Box<dyn LazyFan>, Error>, CliError> {
    if name == "sigma3" {
        return Ok(Ok(Box::new(cube_fan(l)?)));
    }
    match fans::by_name(&l.frame, name, l.lattice.clone()) {
        Ok(f) => Ok(Ok(f)),
        Err(e) if is_precondition(&e) => Ok(Err(e)),
        Err(e) => Err(classify(e)),
    }
}

pub fn run_suite(l: &Loaded, suite: Suite) -> Result<Vec<CheckLine>, CliError> {
    match suite {
        Suite::Axioms => axioms(l),
        Suite::Gamma => gamma(l),
        Suite::Completeness => completeness(l),
        Suite::Relations => relations(l),
        Suite::Gallery => Ok(gallery_lines()),
    }
}

fn axioms(l: &Loaded) -> Result<Vec<CheckLine>, CliError> {
    let mut lines = Vec::new();
    for name in &l.spec.fans {
        let line_name = format!("fan_axioms.{name}");
        let fan = match build_fan(l, name)? {
            Ok(f) => f,
            Err(e) => {
                lines.push(CheckLine::new(&line_name, Status::Precondition, json!({"error": e.to_string()})));
                continue;
            }
        };
        let w = fan.window(&window(l));
        let rep = check_fan(&w);
        lines.push(CheckLine::new(
            &line_name,
            Status::of(rep.passed()),
            json!({
                "bound": l.spec.window,
                "cones": rep.cones,
                "violation_count": rep.violations.len(),
                "violations": truncated(&rep.violations),
            }),
        ));
    }
    Ok(lines)
}

fn gamma(l: &Loaded) -> Result<Vec<CheckLine>, CliError> {
    let fan = cube_fan(l)?;
    let gens = generating_set(&l.frame, l.spec.gamma_k, &standard_translations(&l.frame)).map_err(classify)?;
    let rep = strong_compatibility_check(&fan, &gens, &window(l)).map_err(classify)?;
    let common = json!({"bound": l.spec.window, "cells": rep.cells, "gamma_elements": rep.gamma_elements});
    let with = |extra: Value| {
        let mut w = common.clone();
        w.as_object_mut().expect("object").extend(extra.as_object().expect("object").clone());
        w
    };
    Ok(vec![
        CheckLine::new(
            "strong_compatibility.stability",
            rep.a_status,
            with(json!({"violation_count": rep.a_violations.len(), "violations": truncated(&rep.a_violations)})),
        ),
        CheckLine::new(
            "strong_compatibility.index_action",
            Status::of(rep.action_mismatches.is_empty()),
            with(json!({
                "skipped_for_corrupted_fan": fan.is_corrupted(),
                "mismatch_count": rep.action_mismatches.len(),
                "mismatches": truncated(&rep.action_mismatches),
            })),
        ),
        CheckLine::new(
            "strong_compatibility.integral_generation",
            rep.b_status,
            with(json!({
                "interpretation": "every extreme ray of a window cell contains log(gamma) for some gamma in Gamma",
                "missing_count": rep.b_missing.len(),
                "missing": truncated(&rep.b_missing),
            })),
        ),
    ])
}

fn completeness(l: &Loaded) -> Result<Vec<CheckLine>, CliError> {
    let p = params(l)?;
    let corpus = generate_corpus(&p, l.spec.corpus, l.spec.corpus / 10, l.spec.seed);
    let mut lines = Vec::new();
    for name in &l.spec.fans {
        let line_name = format!("relative_completeness.{name}");
        let fan = match build_fan(l, name)? {
            Ok(f) => f,
            Err(e) => {
                lines.push(CheckLine::new(&line_name, Status::Precondition, json!({"error": e.to_string()})));
                continue;
            }
        };
        let rep = relative_completeness_check(&l.frame, fan.as_ref(), &corpus);
        let failures: Vec<_> = rep.items.iter().filter(|i| i.status == Status::Fail).collect();
        let skipped: Vec<_> = rep.items.iter().filter(|i| i.status == Status::Precondition).collect();
        lines.push(CheckLine::new(
            &line_name,
            Status::of(rep.passed()),
            json!({
                "seed": l.spec.seed,
                "items": rep.items.len(),
                "covered": rep.covered,
                "no_cover": rep.no_cover,
                "precondition": rep.precondition,
                "max_pieces": rep.items.iter().map(|i| i.pieces).max().unwrap_or(0),
                "total_pieces": rep.items.iter().map(|i| i.pieces).sum::<usize>(),
                "failures": truncated(&failures),
                "precondition_items": truncated(&skipped),
            }),
        ));
    }
    Ok(lines)
}

fn relations(l: &Loaded) -> Result<Vec<CheckLine>, CliError> {
    match fan_relations_check(&l.frame, l.spec.window) {
        Ok(r) => Ok(r.lines),
        Err(e) if is_precondition(&e) => {
            Ok(vec![CheckLine::new("type_condition.square_zero", Status::Precondition, json!({"error": e.to_string()}))])
        }
        Err(e) => Err(classify(e)),
    }
}

/// The three slit test points: `(t,(5,0),0)`, `(t,(5,1),0)` and a point with
/// `q ≠ 0`, with the expected membership.
pub fn slit_vectors() -> Vec<(ZuckerPoint, bool)> {
    let t = base_t();
    let pt = |a2: i64, tau| ZuckerPoint { t: t.clone(), a1: real(ri(5)), a2: real(ri(a2)), tau };
    vec![(pt(0, None), true), (pt(1, None), false), (pt(1, Some(g(rat(1, 3), ri(1)))), true)]
}

fn point_json(p: &ZuckerPoint) -> Value {
    use relfan::classifying::gaussian::format_grat;
    json!({
        "a1": format_grat(&p.a1),
        "a2": format_grat(&p.a2),
        "q": p.tau.as_ref().map_or("0".to_string(), |t| format!("exp(2*pi*i*({}))", format_grat(t))),
    })
}

pub fn gallery_lines() -> Vec<CheckLine> {
    let frame = fixtures::example9();
    let rank = frame.rank();
    let mut lines = vec![CheckLine::new("example9.rank", Status::of(rank == 20), json!({"rank": rank}))];
    let factors: Vec<Value> = example9_factors().iter().map(|f| json!({"name": f.name, "rank": f.rank()})).collect();
    lines.push(CheckLine::new(
        "example9.fibre_dimension",
        Status::of(rank / 2 == 4 + 4 + 2),
        json!({"half_rank": rank / 2, "expected": "4 + 4 + 2", "factors": factors}),
    ));
    match relfan::fans::type_condition(&frame) {
        Ok(c) => {
            lines.push(CheckLine::new("example9.n_prime_square_zero", Status::of(c.square_zero), json!({})));
            lines.push(CheckLine::new(
                "example9.type_condition",
                Status::of(c.holds()),
                json!({"square_zero": c.square_zero, "gr0_type_00": c.gr0_type_00, "offending": c.offending}),
            ));
        }
        Err(e) => lines.push(CheckLine::new("example9.type_condition", Status::Precondition, json!({"error": e.to_string()}))),
    }
    let cert = hausdorff_witness(&rat(1, 3), &base_t(), 1..=10);
    let all_b_minus_one = cert.steps.iter().all(|s| s.b.as_deref() == Some("-1"));
    lines.push(CheckLine::new(
        "example9.hausdorff_certificate",
        Status::of(cert.passed && all_b_minus_one),
        json!({"b_is_minus_one_at_every_step": all_b_minus_one, "certificate": cert}),
    ));
    lines.push(CheckLine::new(
        "example9.limits_not_equivalent",
        Status::of(!cert.limits_equivalent && cert.limits_identified),
        json!({"reason": cert.limit_reason}),
    ));
    let vectors: Vec<Value> = slit_vectors()
        .iter()
        .map(|(p, want)| json!({"point": point_json(p), "expected": want, "member": slit_member(p)}))
        .collect();
    let ok = slit_vectors().iter().all(|(p, want)| slit_member(p) == *want);
    lines.push(CheckLine::new("example9.slit", Status::of(ok), json!({"vectors": vectors})));
    lines
}

/// `gallery example9`: the data, the condition report, the certificate and
/// the slit test vectors.
pub fn gallery_example9() -> Result<Value, CliError> {
    let data = example9_data().map_err(classify)?;
    let frame = fixtures::example9();
    let cond = relfan::fans::type_condition(&frame).map_err(classify)?;
    let cert = hausdorff_witness(&rat(1, 3), &base_t(), 1..=10);
    let vectors: Vec<Value> = slit_vectors()
        .iter()
        .map(|(p, want)| json!({"point": point_json(p), "expected": want, "member": slit_member(p)}))
        .collect();
    Ok(json!({
        "degeneration": DegenerationJson::from_data(&data),
        "type_condition": {"holds": cond.holds(), "square_zero": cond.square_zero, "gr0_type_00": cond.gr0_type_00, "offending": cond.offending},
        "hausdorff_certificate": cert,
        "slit_vectors": vectors,
    }))
}

pub fn build(l: &Loaded) -> Result<Vec<CheckLine>, CliError> {
    let p = params(l)?;
    let mut lines = vec![CheckLine::new(
        "params",
        Status::Pass,
        json!({
            "m": p.m(),
            "lattice": p.l.basis().iter().map(|b| format_vec(b)).collect::<Vec<_>>(),
            "p_dim": p.pq.p.dim(),
            "q_dim": p.pq.q.dim(),
            "definitions_agree": p.pq.agree(),
            "section": p.section.iter().map(|b| format_vec(b)).collect::<Vec<_>>(),
            "basis_e": p.basis_e.iter().map(|b| format_vec(b)).collect::<Vec<_>>(),
        }),
    )];
    for name in &l.spec.fans {
        let line_name = format!("window.{name}");
        match build_fan(l, name)? {
            Ok(fan) => {
                let w = fan.window(&window(l));
                lines.push(CheckLine::new(
                    &line_name,
                    Status::Pass,
                    json!({"bound": l.spec.window, "cones": w.len(), "window": w.to_json()}),
                ));
            }
            Err(e) => lines.push(CheckLine::new(&line_name, Status::Precondition, json!({"error": e.to_string()}))),
        }
    }
    Ok(lines)
}

/// The endomorphism for `rmf`: a full matrix on `H`, or `N(e)` extending `N'`.
pub enum RmfInput {
    Matrix(QMat),
    Ne(Vec<relfan::linalg::Rat>),
}

pub fn rmf(l: &Loaded, input: &RmfInput) -> Result<Vec<CheckLine>, CliError> {
    let f = &l.frame;
    let n = match input {
        RmfInput::Matrix(m) => m.clone(),
        RmfInput::Ne(v) => {
            if v.len() != f.rank() {
                return Err(CliError::Input(format!("N(e) has length {}, rank is {}", v.len(), f.rank())));
            }
            f.extend(v)
        }
    };
    if n.nrows() != f.dim() || !n.is_square() {
        return Err(CliError::Input(format!("N must be {0}x{0}", f.dim())));
    }
    GSpace::new(f).check_member(&n).map_err(classify)?;
    let mut lines = Vec::new();
    let (r, ne) = f.split(&n).map_err(classify)?;
    if &r == f.n_prime() {
        let witness = match admissibility(f, &n).map_err(classify)? {
            Admissibility::Admissible { a, u } => json!({"admissible": true, "a": format_vec(&a), "u": format_vec(&u)}),
            Admissibility::NotAdmissible { ne } => json!({
                "admissible": false,
                "n_e": format_vec(&ne),
                "reason": "N(e) is not in P = Im N' + W'_{-2}",
                "p_basis": f.admissible_values.basis().iter().map(|b| format_vec(b)).collect::<Vec<_>>(),
            }),
        };
        lines.push(CheckLine::new("existence_criterion", Status::Pass, witness));
    }
    match rmf_general(f, &n).map_err(classify)? {
        Some(m) => {
            lines.push(CheckLine::new("rmf", Status::Pass, json!({"exists": true, "m": filtration_json(&m)})));
            let ax = check_relative(&n, &m, &f.w);
            lines.push(CheckLine::new("rmf_axioms", Status::of(ax.is_ok()), json!({"error": ax.err()})));
        }
        None => lines.push(CheckLine::new("rmf", Status::Pass, json!({"exists": false, "n_e": format_vec(&ne)}))),
    }
    Ok(lines)
}
