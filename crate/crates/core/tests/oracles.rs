//! Worked values, each checked against an oracle computed independently of
//! the code path under test.

mod common;

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use relfan::classifying::gaussian::{g, real};
use relfan::classifying::{nilpotent_orbit_test, GRat, PeriodPoint, DEFAULT_SAMPLES};
use relfan::cones::{check_fan, subdivide_against, verify_cover, Cone, FiniteFan, GSpace, LazyFan, Window};
use relfan::fans::{ad_action, check_type_condition, sigma3, CellIndex, SigmaParams};
use relfan::gallery::{equivalence, equivalent, hausdorff_witness, slit_member, Equivalence, ZuckerPoint};
use relfan::gallery::zucker::base_t;
use relfan::hodge::{
    admissible_direction, check_monodromy, check_relative, commutes_by_criterion, log_unipotent,
    monodromy_filtration, relative_monodromy_filtration, Filtration, GammaElement, NilpotentEndo,
};
use relfan::linalg::rat::{int_vec, rat, ri, unit_vec};
use relfan::linalg::{order_in_quotient, snf, Int, QMat, Rat, Subspace, ZLattice};
use relfan::{fixtures, Error};

fn q(rows: &[&[i64]]) -> QMat {
    QMat::from_ints(rows)
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<Int>> {
    rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

fn span(d: usize, vs: &[&[i64]]) -> Subspace {
    Subspace::span(d, &vs.iter().map(|v| int_vec(v)).collect::<Vec<_>>())
}

// ---------- exact linear algebra ----------

#[test]
fn kernel_and_image_by_substitution() {
    let m = q(&[&[1, 2], &[2, 4]]);
    let k = m.kernel();
    assert_eq!(k.dim(), 1);
    // (2,-1) is killed, and the kernel is a line
    assert!(m.mul_vec(&int_vec(&[2, -1])).iter().all(Zero::is_zero));
    assert_eq!(k, span(2, &[&[2, -1]]));
    assert_eq!(q(&[&[0, 1], &[0, 0]]).kernel(), span(2, &[&[1, 0]]));
    assert_eq!(QMat::zeros(2, 2).kernel(), Subspace::full(2));

    let m = q(&[&[1, 1], &[1, 1]]);
    assert_eq!(m.image(), span(2, &[&[1, 1]]));
    assert_eq!(q(&[&[0, 1], &[0, 0]]).image(), span(2, &[&[1, 0]]));
    assert_eq!(QMat::identity(2).image(), Subspace::full(2));
}

#[test]
fn lattice_sum_and_meet_on_a_line() {
    let l = |v: &[i64]| ZLattice::from_generators(2, &[int_vec(v)]);
    // gcd and lcm of 2 and 3
    assert_eq!(l(&[2, 0]).sum(&l(&[3, 0])), l(&[Integer::gcd(&2i64, &3), 0]));
    assert_eq!(l(&[2, 0]).intersect(&l(&[3, 0])), l(&[Integer::lcm(&2i64, &3), 0]));
    assert_eq!(l(&[1, 0]).sum(&l(&[0, 1])), ZLattice::standard(2));
    assert_eq!(l(&[1, 0]).intersect(&l(&[0, 1])), ZLattice::zero(2));
    let a = l(&[4, 6]);
    assert_eq!(a.sum(&a), a);
    assert_eq!(a.intersect(&a), a);
}

/// Determinantal divisors `d_k = gcd of k×k minors`; invariants are `d_k / d_{k-1}`.
fn determinantal_invariants_2x2(m: &[Vec<Int>]) -> Vec<Int> {
    let d1 = m.iter().flatten().fold(Int::zero(), |g, x| g.gcd(x));
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    vec![d1.clone(), if d1.is_zero() { Int::zero() } else { det.abs() / d1 }]
}

#[test]
fn smith_form_by_determinantal_divisors() {
    for m in [ints(&[&[2, 0], &[0, 3]]), ints(&[&[1, 0], &[0, 1]]), ints(&[&[4, 6], &[6, 9]]), ints(&[&[2, 4], &[6, 8]])] {
        let s = snf(&m, 2);
        let expect: Vec<Int> = determinantal_invariants_2x2(&m).into_iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(s.invariants(), expect, "{m:?}");
    }
    assert_eq!(snf(&ints(&[&[2, 0], &[0, 3]]), 2).d, ints(&[&[1, 0], &[0, 6]]));
    assert_eq!(snf(&ints(&[&[6]]), 1).d, ints(&[&[6]]));
}

/// Smallest `k` with `k·x ∈ Z^n + span{e_i : i ∈ free}`, by counting up.
fn brute_order(x: &[Rat], free: &[usize]) -> Int {
    (1..1000)
        .map(Int::from)
        .find(|k| x.iter().enumerate().all(|(i, c)| free.contains(&i) || (c * Rat::from_integer(k.clone())).is_integer()))
        .expect("small order")
}

#[test]
fn order_in_quotient_by_counting() {
    let z2 = ZLattice::standard(2);
    let cases: Vec<(Vec<Rat>, Vec<usize>)> = vec![
        (vec![rat(1, 2), rat(0, 1)], vec![]),
        (vec![rat(1, 3), rat(1, 2)], vec![1]),
        (vec![rat(3, 1), rat(-2, 1)], vec![]),
        (vec![rat(5, 6), rat(7, 4)], vec![]),
        (vec![rat(5, 6), rat(7, 4)], vec![0]),
    ];
    for (x, free) in cases {
        let v = Subspace::span(2, &free.iter().map(|&i| unit_vec(2, i)).collect::<Vec<_>>());
        assert_eq!(order_in_quotient(&x, &z2, &v).unwrap(), brute_order(&x, &free), "{x:?} {free:?}");
    }
    assert_eq!(order_in_quotient(&[rat(1, 2), rat(0, 1)], &z2, &Subspace::zero(2)).unwrap(), Int::from(2));
    assert_eq!(order_in_quotient(&[rat(1, 3), rat(1, 2)], &z2, &span(2, &[&[0, 1]])).unwrap(), Int::from(3));
}

// ---------- nilpotent data and filtrations ----------

/// `exp` by the truncated series, written out separately from the library.
fn series_exp(n: &QMat) -> QMat {
    let d = n.nrows();
    let mut out = QMat::identity(d);
    let mut term = QMat::identity(d);
    for k in 1..=d as i64 {
        term = term.mul(n).scale(&rat(1, k));
        out = out.add(&term);
    }
    out
}

#[test]
fn unipotent_logarithms() {
    let j = q(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let g = QMat::identity(3).add(&j).add(&j.mul(&j));
    let l = log_unipotent(&g).unwrap();
    assert_eq!(l.matrix(), &j.add(&j.mul(&j).scale(&rat(1, 2))));
    assert_eq!(series_exp(l.matrix()), g);
    assert_eq!(log_unipotent(&q(&[&[1, 1], &[0, 1]])).unwrap().matrix(), &q(&[&[0, 1], &[0, 0]]));
    assert!(log_unipotent(&QMat::identity(2)).unwrap().matrix().is_zero());
}

#[test]
fn weight_filtrations_of_jordan_blocks() {
    let n = NilpotentEndo::new(q(&[&[0, 1], &[0, 0]])).unwrap();
    let w = monodromy_filtration(&n, 0);
    assert!(w.get(-2).is_zero());
    assert_eq!(w.get(-1), span(2, &[&[1, 0]]));
    assert_eq!(w.get(0), span(2, &[&[1, 0]]));
    assert!(w.get(1).is_full());
    assert!(check_monodromy(n.matrix(), &w, 0).is_ok());

    let j = q(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let w = monodromy_filtration(&NilpotentEndo::new(j.clone()).unwrap(), 0);
    // N²v spans the bottom, Im N the middle
    assert_eq!(w.get(-2), j.mul(&j).image());
    assert_eq!(w.get(-1), j.mul(&j).image());
    assert_eq!(w.get(0), j.image());
    assert_eq!(w.get(1), j.image());
    assert!(w.get(2).is_full());
    assert!(check_monodromy(&j, &w, 0).is_ok());

    let w = monodromy_filtration(&NilpotentEndo::zero(2), 3);
    assert!(w.get(2).is_zero() && w.get(3).is_full());
}

#[test]
fn fix_a_shifted_weight_filtration() {
    let f = fixtures::fix_a();
    let e1 = span(2, &[&[1, 0]]);
    assert_eq!(f.w_prime.get(-3), Subspace::zero(2));
    assert_eq!(f.w_prime.get(-2), e1);
    assert_eq!(f.w_prime.get(-1), e1);
    assert!(f.w_prime.get(0).is_full());
    assert_eq!(f.n_prime().image(), e1);
}

#[test]
fn existence_criterion_examples() {
    let f = fixtures::fix_a();
    assert!(admissible_direction(&f, &f.extend(&int_vec(&[1, 0]))).unwrap());
    assert!(!admissible_direction(&f, &f.extend(&int_vec(&[0, 1]))).unwrap());
    let t = fixtures::trivial_rank1();
    assert!(admissible_direction(&t, &t.extend(&int_vec(&[0]))).unwrap());
}

#[test]
fn fix_a_relative_filtration_explicit_and_exhaustive() {
    let f = fixtures::fix_a();
    let n = f.extend(&int_vec(&[1, 0]));
    let m = relative_monodromy_filtration(&f, &n).unwrap().unwrap();
    let e1 = span(3, &[&[1, 0, 0]]);
    assert_eq!(m.get(-3), Subspace::zero(3));
    assert_eq!(m.get(-2), e1);
    assert_eq!(m.get(-1), e1);
    assert!(m.get(0).is_full());
    // ẽ = e − e₂ spans the top graded piece; it is killed by N
    assert!(n.mul_vec(&int_vec(&[0, -1, 1])).iter().all(Zero::is_zero));
    assert!(check_relative(&n, &m, &f.w).is_ok());
    assert_eq!(common::exhaustive_rmf_search(&f, &n), vec![m.clone()]);
    assert_eq!(common::direct_rmf(&f, &n), Some(m));

    let bad = f.extend(&int_vec(&[0, 1]));
    assert_eq!(relative_monodromy_filtration(&f, &bad).unwrap(), None);
    assert!(common::exhaustive_rmf_search(&f, &bad).is_empty());
    assert_eq!(common::direct_rmf(&f, &bad), None);
}

#[test]
fn zero_endomorphism_gives_w() {
    for f in [fixtures::trivial_rank1(), fixtures::trivial()] {
        let n = QMat::zeros(f.dim(), f.dim());
        let m = relative_monodromy_filtration(&f, &n).unwrap().unwrap();
        for j in -4..=2 {
            assert_eq!(m.get(j), f.w.get(j));
        }
        assert_eq!(common::exhaustive_rmf_search(&f, &n), vec![m]);
    }
}

#[test]
fn commutation_examples() {
    let f = fixtures::fix_a();
    let n = |v: &[i64]| f.extend(&int_vec(v));
    assert!(commutes_by_criterion(&f, &n(&[1, 0]), &n(&[2, 0])).unwrap());
    assert!(n(&[1, 0]).commutator(&n(&[2, 0])).is_zero());
    assert!(!commutes_by_criterion(&f, &n(&[0, 1]), &n(&[0, 0])).unwrap());
    assert!(!n(&[0, 1]).commutator(&n(&[0, 0])).is_zero());
    assert!(commutes_by_criterion(&f, &n(&[3, 5]), &n(&[3, 5])).unwrap());
}

// ---------- cones and fans ----------

fn fa(vals: &[&[Rat]]) -> Result<Cone, Error> {
    let f = fixtures::fix_a();
    let gs = GSpace::new(&f);
    Cone::from_generators(&gs, &vals.iter().map(|v| f.extend(v)).collect::<Vec<_>>())
}

#[test]
fn fix_a_cell_cone() {
    let f = fixtures::fix_a();
    let n0 = int_vec(&[0, 0]);
    let n1 = int_vec(&[1, 0]);
    let c = fa(&[&n0, &n1]).unwrap();
    assert_eq!(c.dim(), 2);
    assert_eq!(c.rays().len(), 2);
    let faces = c.faces();
    assert_eq!(faces.len(), 4);
    assert!(faces.contains(&Cone::zero(3)));
    assert!(faces.contains(&fa(&[&n0]).unwrap()));
    assert!(faces.contains(&fa(&[&n1]).unwrap()));
    assert!(faces.contains(&c));
    // ½e₁ = ½N₀ + ½N₁ restricted to e
    assert!(c.contains(&f.extend(&[rat(1, 2), rat(0, 1)])).unwrap());
    assert!(Cone::zero(3).is_face_of(&c).unwrap());
    assert_eq!(Cone::zero(3).faces(), vec![Cone::zero(3)]);
    let n = f.extend(&n1);
    let gs = GSpace::new(&f);
    assert_eq!(Cone::from_generators(&gs, &[n.clone(), n.neg()]), Err(Error::NotSharp));
    assert_eq!(Cone::from_generators(&gs, std::slice::from_ref(&n)).unwrap().faces().len(), 2);
}

#[test]
fn sigma3_on_fix_a() {
    let f = fixtures::fix_a();
    let p = SigmaParams::default_params(&f).unwrap();
    assert_eq!(p.m(), 1);
    assert!(p.section.is_empty());
    assert_eq!(p.l, ZLattice::standard(2));
    let fan = sigma3(p.clone());
    let idx0 = CellIndex::new(int_vec(&[0, 0]), vec![0]);
    assert_eq!(fan.cell(&idx0).unwrap(), fa(&[&int_vec(&[0, 0]), &int_vec(&[1, 0])]).unwrap());
    assert_eq!(fan.index_containing(&f.extend(&[rat(3, 2), rat(0, 1)])), Some(CellIndex::new(int_vec(&[0, 0]), vec![1])));
    assert_eq!(fan.index_containing(&f.extend(&int_vec(&[0, 1]))), None);
    assert!(fan.is_member(&Cone::zero(3)));

    let window = fan.window(&Window::new(2));
    assert!(check_fan(&window).passed());
    let mut broken = FiniteFan::new([fan.cell(&idx0).unwrap()]);
    assert!(!check_fan(&broken).passed());
    broken = FiniteFan::new([Cone::zero(3)]);
    assert!(check_fan(&broken).passed());
}

#[test]
fn subdivision_of_an_interval() {
    let f = fixtures::fix_a();
    let fan = sigma3(SigmaParams::default_params(&f).unwrap());
    let c = fa(&[&int_vec(&[0, 0]), &[rat(5, 2), rat(0, 1)]]).unwrap();
    let pieces = subdivide_against(&c, &fan).unwrap();
    assert_eq!(pieces.len(), 3);
    let mut hosts: Vec<Cone> = pieces.iter().map(|p| p.host.clone()).collect();
    hosts.dedup();
    for n in 0..=2 {
        let cell = fan.cell(&CellIndex::new(int_vec(&[0, 0]), vec![n])).unwrap();
        assert!(hosts.contains(&cell), "n = {n}");
    }
    verify_cover(&c, &pieces.iter().map(|p| p.cone.clone()).collect::<Vec<_>>()).unwrap();
    let inside = fa(&[&[rat(1, 3), rat(0, 1)], &[rat(2, 3), rat(0, 1)]]).unwrap();
    let pieces = subdivide_against(&inside, &fan).unwrap();
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0].cone, inside);
    let ray = fa(&[&int_vec(&[0, 1])]).unwrap();
    assert!(matches!(subdivide_against(&ray, &fan), Err(Error::PreconditionViolated(_))));
}

#[test]
fn gamma_action_matches_conjugation() {
    let f = fixtures::fix_a();
    let p = SigmaParams::default_params(&f).unwrap();
    let idx = CellIndex::new(int_vec(&[0, 0]), vec![0]);
    let cases = [
        (GammaElement::identity(2), vec![0]),
        (GammaElement { power_k: 0, h: vec![Int::from(0), Int::from(1)] }, vec![-1]),
        (GammaElement { power_k: 1, h: vec![Int::from(0), Int::from(0)] }, vec![0]),
    ];
    for (g, n) in cases {
        let out = ad_action(&p, &g, &idx).unwrap();
        assert_eq!(out, CellIndex::new(int_vec(&[0, 0]), n));
        let gm = g.matrix(&f).unwrap();
        let conj = p.cell(&idx).unwrap().conjugate(&gm, &gm.inverse().unwrap());
        assert_eq!(conj, p.cell(&out).unwrap());
    }
}

#[test]
fn square_zero_condition_examples() {
    assert!(check_type_condition(&fixtures::fix_a()).unwrap());
    assert!(!check_type_condition(&fixtures::fix_d()).unwrap());
    let np = fixtures::fix_d().n_prime().clone();
    assert!(!np.mul(&np).is_zero());
}

// ---------- classifying space ----------

fn fix_a_point(tau: GRat) -> PeriodPoint {
    let f = fixtures::fix_a();
    let z = || real(ri(0));
    let one = || real(ri(1));
    let levels = BTreeMap::from([
        (-1, vec![vec![one(), z(), z()], vec![z(), one(), z()], vec![z(), z(), one()]]),
        (0, vec![vec![tau, one(), z()], vec![z(), z(), one()]]),
    ]);
    PeriodPoint::new(&f, levels).unwrap()
}

/// `i·⟨x, x̄⟩` for `x = e₂ + τe₁` with `⟨e₂, e₁⟩ = 1`: `2·Im τ`.
fn hand_form(tau: &GRat) -> Rat {
    tau.im.clone() * ri(2)
}

#[test]
fn period_points_in_d() {
    for (tau, inside) in [(g(ri(0), ri(1)), true), (g(ri(0), ri(-1)), false), (real(ri(0)), false), (g(rat(1, 2), rat(1, 7)), true)] {
        let pt = fix_a_point(tau.clone());
        assert!(pt.in_compact_dual());
        assert_eq!(pt.in_d().unwrap(), inside, "{tau}");
        assert_eq!(hand_form(&tau) > Rat::zero(), inside);
    }
}

#[test]
fn tate_orbit_at_documented_samples() {
    let f = fixtures::fix_a();
    let n = f.extend(&int_vec(&[0, 0]));
    let pt = fix_a_point(real(ri(0)));
    assert!(pt.small_griffiths(&n));
    let rep = nilpotent_orbit_test(&pt, &[n], &DEFAULT_SAMPLES, 1).unwrap();
    assert!(rep.passed);
    assert_eq!(DEFAULT_SAMPLES, [1, 4, 16, 64, 256]);
}

// ---------- gallery ----------

fn zp(a1: GRat, a2: GRat, tau: Option<GRat>) -> ZuckerPoint {
    ZuckerPoint { t: base_t(), a1, a2, tau }
}

#[test]
fn kunneth_frame() {
    let f = fixtures::example9();
    assert_eq!(f.rank(), 4 + 6 * 2 + 4);
    assert_eq!(f.rank() / 2, 4 + 4 + 2);
    let np = f.n_prime();
    assert!(!np.is_zero());
    assert!(np.mul(np).is_zero());
}

#[test]
fn hausdorff_sequences_and_slit() {
    let c = rat(1, 3);
    let cert = hausdorff_witness(&c, &base_t(), 1..=10);
    assert!(cert.passed);
    assert_eq!(cert.steps.len(), 10);
    assert!(cert.steps.iter().all(|s| s.equivalent && s.b.as_deref() == Some("-1")));
    assert!(!cert.limits_equivalent);
    for n in 1..=10 {
        let tau = g(c.clone(), ri(n));
        let e = equivalence(&zp(real(c.clone()), real(ri(1)), Some(tau.clone())), &zp(real(ri(0)), real(ri(0)), Some(tau)));
        assert_eq!(e, Equivalence::Generic { b: real(ri(-1)) });
    }
    assert!(!equivalent(&zp(real(ri(0)), real(ri(1)), None), &zp(real(ri(0)), real(ri(0)), None)));
    assert_eq!(hausdorff_witness(&c, &base_t(), std::iter::empty()).steps.len(), 0);

    assert!(slit_member(&zp(real(ri(5)), real(ri(0)), None)));
    assert!(!slit_member(&zp(real(ri(5)), real(ri(1)), None)));
    assert!(slit_member(&zp(real(ri(5)), real(ri(1)), Some(g(ri(0), ri(3))))));
    let p = zp(g(rat(2, 5), ri(1)), real(ri(7)), Some(g(ri(1), ri(2))));
    assert!(equivalent(&p, &p));
}

#[test]
fn filtration_rejects_non_increasing_steps() {
    let steps = BTreeMap::from([(0, span(2, &[&[1, 0]])), (1, span(2, &[&[0, 1]])), (2, Subspace::full(2))]);
    assert!(Filtration::new(2, steps).is_err());
}
