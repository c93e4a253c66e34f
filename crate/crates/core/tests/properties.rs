//! Algebraic invariants under random inputs.

mod common;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use relfan::classifying::gaussian::{g, real};
use relfan::classifying::{GRat, PeriodPoint};
use relfan::cones::{subdivide_against, verify_cover, Cone, GSpace, LazyFan};
use relfan::fans::{ad_action, generating_set, sigma3, standard_translations, SigmaParams};
use relfan::gallery::zucker::base_t;
use relfan::gallery::{equivalent, slit_member, ZuckerPoint};
use relfan::hodge::{
    admissible_direction, check_monodromy, check_relative, commutes_by_criterion, log_unipotent,
    monodromy_filtration, relative_monodromy_filtration, ExtensionFrame, NilpotentEndo,
};
use relfan::linalg::rat::{rat, ri};
use relfan::linalg::snf::int_matmul;
use relfan::linalg::{order_in_quotient, snf, Int, QMat, Rat, Subspace, ZLattice};
use relfan::fixtures;

fn qmat(rows: usize, cols: usize, v: &[i64]) -> QMat {
    QMat::from_rows((0..rows).map(|i| (0..cols).map(|j| ri(v[i * cols + j])).collect()).collect())
}

fn ivec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| ri(x)).collect()
}

fn int_det(m: &[Vec<Int>]) -> Int {
    QMat::from_rows(m.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect())
        .det()
        .to_integer()
}

/// Strictly upper-triangular, hence nilpotent.
fn strict_upper(d: usize, v: &[i64]) -> QMat {
    let mut m = QMat::zeros(d, d);
    let mut k = 0;
    for i in 0..d {
        for j in i + 1..d {
            m.set(i, j, ri(v[k]));
            k += 1;
        }
    }
    m
}

fn frame_by(i: usize) -> ExtensionFrame {
    [fixtures::fix_a(), fixtures::fix_d(), fixtures::fix_b()][i % 3].clone()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn rank_nullity(v in prop::collection::vec(-3i64..=3, 12)) {
        let m = qmat(3, 4, &v);
        prop_assert_eq!(m.kernel().dim() + m.image().dim(), 4);
        for k in m.kernel().basis() {
            prop_assert!(m.mul_vec(k).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn subspace_span_is_canonical(v in prop::collection::vec(-3i64..=3, 9), s in 1i64..=5) {
        let vs: Vec<Vec<Rat>> = v.chunks(3).map(ivec).collect();
        let a = Subspace::span(3, &vs);
        let mut other: Vec<Vec<Rat>> = vs.iter().rev().map(|x| x.iter().map(|c| c * ri(s)).collect()).collect();
        other.push(vs.iter().fold(vec![Rat::zero(); 3], |acc, x| acc.iter().zip(x).map(|(p, q)| p + q).collect()));
        prop_assert_eq!(a.clone(), Subspace::span(3, &other));
        prop_assert_eq!(a.dim(), a.basis().len());
    }

    #[test]
    fn lattice_sum_and_meet_bracket(a in prop::collection::vec(-6i64..=6, 4), b in prop::collection::vec(-6i64..=6, 4)) {
        let la = ZLattice::from_generators(2, &a.chunks(2).map(ivec).collect::<Vec<_>>());
        let lb = ZLattice::from_generators(2, &b.chunks(2).map(ivec).collect::<Vec<_>>());
        let s = la.sum(&lb);
        let m = la.intersect(&lb);
        prop_assert!(la.is_sublattice_of(&s) && lb.is_sublattice_of(&s));
        prop_assert!(m.is_sublattice_of(&la) && m.is_sublattice_of(&lb));
        prop_assert_eq!(la.sum(&la), la.clone());
        for v in m.basis() {
            prop_assert!(la.contains(&v) && lb.contains(&v));
        }
    }

    #[test]
    fn smith_form_factorizes(v in prop::collection::vec(-9i64..=9, 6)) {
        let m: Vec<Vec<Int>> = v.chunks(3).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        let s = snf(&m, 3);
        prop_assert_eq!(int_matmul(&int_matmul(&s.u, &m, 3), &s.v, 3), s.d.clone());
        prop_assert!(int_det(&s.u).abs().is_one());
        prop_assert!(int_det(&s.v).abs().is_one());
        let inv = s.invariants();
        for w in inv.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for (i, row) in s.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert!(i == j || x.is_zero());
            }
        }
    }

    #[test]
    fn quotient_order_is_minimal(num in prop::collection::vec(-12i64..=12, 3), den in prop::collection::vec(1i64..=12, 3), free in 0usize..4) {
        let x: Vec<Rat> = num.iter().zip(&den).map(|(&n, &d)| rat(n, d)).collect();
        let v = if free < 3 { Subspace::span(3, &[relfan::linalg::rat::unit_vec(3, free)]) } else { Subspace::zero(3) };
        let a = ZLattice::standard(3);
        let k = order_in_quotient(&x, &a, &v).unwrap();
        let ok = |k: i64| x.iter().enumerate().all(|(i, c)| i == free || (c * ri(k)).is_integer());
        let kk: i64 = k.clone().try_into().unwrap();
        prop_assert!(ok(kk));
        prop_assert!((1..kk).all(|j| !ok(j)));
    }

    #[test]
    fn log_inverts_exp(v in prop::collection::vec(-4i64..=4, 6)) {
        let n = strict_upper(4, &v);
        let g = n.exp_nilpotent().unwrap();
        let l = log_unipotent(&g).unwrap();
        prop_assert_eq!(l.matrix(), &n);
        prop_assert_eq!(&NilpotentEndo::new(n.clone()).unwrap().exp(), &g);
    }

    #[test]
    fn monodromy_axioms_hold(v in prop::collection::vec(-2i64..=2, 10), center in -3i32..=3) {
        let n = NilpotentEndo::new(strict_upper(5, &v)).unwrap();
        let w = monodromy_filtration(&n, center);
        prop_assert!(check_monodromy(n.matrix(), &w, center).is_ok());
    }

    #[test]
    fn rmf_exists_iff_admissible(which in 0usize..3, seed in any::<u64>(), admissible in any::<bool>()) {
        let f = frame_by(which);
        let mut r = common::rng(seed);
        let ne = if admissible { common::admissible_ne(&f, &mut r) } else {
            common::inadmissible_ne(&f, &mut r).unwrap_or_else(|| common::random_vec(&mut r, f.rank()))
        };
        let n = f.extend(&ne);
        let crit = admissible_direction(&f, &n).unwrap();
        let m = relative_monodromy_filtration(&f, &n).unwrap();
        prop_assert_eq!(crit, m.is_some());
        prop_assert_eq!(crit, common::direct_rmf(&f, &n).is_some());
        if let Some(m) = m {
            prop_assert!(check_relative(&n, &m, &f.w).is_ok());
        }
        if admissible {
            prop_assert!(crit);
        }
    }

    #[test]
    fn commutation_criterion_matches_commutator(which in 0usize..3, seed in any::<u64>(), close in any::<bool>()) {
        let f = frame_by(which);
        let mut r = common::rng(seed);
        let e1 = common::random_vec(&mut r, f.rank());
        let e2 = if close {
            f.ker_n.basis().iter().fold(e1.clone(), |acc, b| {
                let c = common::small_rat(&mut r);
                acc.iter().zip(b).map(|(x, y)| x + &c * y).collect()
            })
        } else {
            common::random_vec(&mut r, f.rank())
        };
        let (n1, n2) = (f.extend(&e1), f.extend(&e2));
        let crit = commutes_by_criterion(&f, &n1, &n2).unwrap();
        prop_assert_eq!(crit, n1.commutator(&n2).is_zero());
        if close {
            prop_assert!(crit);
        }
    }

    #[test]
    fn cone_is_canonical(a in -6i64..=6, b in -6i64..=6, s in 1i64..=4) {
        let f = fixtures::fix_a();
        let gs = GSpace::new(&f);
        // restrictions all equal N', values along Im N' so the generators commute
        let va = vec![ri(a), Rat::zero()];
        let vb = vec![ri(b), Rat::zero()];
        let mid: Vec<Rat> = va.iter().zip(&vb).map(|(x, y)| (x + y) / ri(2)).collect();
        let c1 = Cone::from_generators(&gs, &[f.extend(&va), f.extend(&vb)]).unwrap();
        let c2 = Cone::from_generators(&gs, &[f.extend(&vb).scale(&ri(s)), f.extend(&mid), f.extend(&va)]).unwrap();
        prop_assert_eq!(c1.clone(), c2);
        prop_assert!(c1.contains(&f.extend(&mid)).unwrap());
    }

    #[test]
    fn subdivision_covers(which in 0usize..2, seed in any::<u64>()) {
        let f = frame_by(which);
        let fan = sigma3(SigmaParams::default_params(&f).unwrap());
        let mut r = common::rng(seed);
        // admissible values inside P commute pairwise exactly when they differ by Ker N'
        let u = common::admissible_ne(&f, &mut r);
        let k = f.ker_n.basis().iter().fold(u.clone(), |acc, b| {
            let c = common::small_rat(&mut r);
            acc.iter().zip(b).map(|(x, y)| x + &c * y).collect()
        });
        let gs = GSpace::new(&f);
        let c = match Cone::from_generators(&gs, &[f.extend(&u), f.extend(&k)]) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        match subdivide_against(&c, &fan) {
            Ok(pieces) => {
                verify_cover(&c, &pieces.iter().map(|p| p.cone.clone()).collect::<Vec<_>>()).unwrap();
                for p in &pieces {
                    prop_assert!(p.cone.is_subcone_of(&p.host).unwrap());
                    prop_assert!(fan.is_member(&p.host));
                }
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn gamma_action_is_conjugation(which in 0usize..2, pick in any::<prop::sample::Index>(), n in prop::collection::vec(-3i64..=3, 2), coset in any::<prop::sample::Index>()) {
        let f = frame_by(which);
        let p = SigmaParams::default_params(&f).unwrap();
        let gens = generating_set(&f, 2, &standard_translations(&f)).unwrap();
        let g = pick.get(&gens);
        let cosets = p.default_cosets();
        let x = coset.get(&cosets);
        let idx = p.canonical_index(x, n[..p.m()].iter().map(|&v| Int::from(v)).collect()).unwrap();
        let out = ad_action(&p, g, &idx).unwrap();
        let gm = g.matrix(&f).unwrap();
        let conj = p.cell(&idx).unwrap().conjugate(&gm, &gm.inverse().unwrap());
        prop_assert_eq!(conj, p.cell(&out).unwrap());
    }

    #[test]
    fn a_of_is_consistent(which in 0usize..2, coset in any::<prop::sample::Index>(), shift in prop::collection::vec(-3i64..=3, 2)) {
        let f = frame_by(which);
        let p = SigmaParams::default_params(&f).unwrap();
        let cosets = p.default_cosets();
        let x = coset.get(&cosets);
        let a = p.a_of(x).unwrap();
        prop_assert!(a >= Int::one());
        // moving within the class by Q∩L changes neither a(x) nor s(x)
        let moved = p.basis_e.iter().zip(&shift).fold(x.clone(), |acc, (e, &t)| acc.iter().zip(e).map(|(u, v)| u + ri(t) * v).collect());
        prop_assert_eq!(p.a_of(&moved).unwrap(), a);
        prop_assert_eq!(p.section_of(&moved).unwrap(), p.section_of(x).unwrap());
    }

    #[test]
    fn zucker_equivalence_relation(a in prop::collection::vec(-3i64..=3, 6), tre in -2i64..=2, tim in 1i64..=3, degenerate in any::<bool>()) {
        let tau = if degenerate { None } else { Some(g(rat(tre, 2), ri(tim))) };
        let pt = |x: i64, y: i64, z: i64| ZuckerPoint { t: base_t(), a1: g(ri(x), ri(y)), a2: real(ri(z)), tau: tau.clone() };
        let p1 = pt(a[0], a[1], a[2]);
        let p2 = pt(a[3], a[4], a[2] + a[5] % 2);
        let p3 = pt(a[0] + a[5], a[1], a[2]);
        prop_assert!(equivalent(&p1, &p1));
        prop_assert_eq!(equivalent(&p1, &p2), equivalent(&p2, &p1));
        if equivalent(&p1, &p2) && equivalent(&p2, &p3) {
            prop_assert!(equivalent(&p1, &p3));
        }
        prop_assert_eq!(slit_member(&p1), !degenerate || a[2] == 0);
    }

    #[test]
    fn in_d_implies_compact_dual(re in -6i64..=6, im in -6i64..=6, den in 1i64..=5) {
        let tau: GRat = g(rat(re, den), rat(im, den));
        let f = fixtures::fix_a();
        let z = || real(ri(0));
        let one = || real(ri(1));
        let levels = std::collections::BTreeMap::from([
            (-1, vec![vec![one(), z(), z()], vec![z(), one(), z()], vec![z(), z(), one()]]),
            (0, vec![vec![tau, one(), z()], vec![z(), z(), one()]]),
        ]);
        let pt = PeriodPoint::new(&f, levels).unwrap();
        let d = pt.in_d().unwrap();
        if d {
            prop_assert!(pt.in_compact_dual());
        }
        prop_assert_eq!(d, im > 0);
    }
}
