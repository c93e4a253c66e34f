//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relfan::hodge::{check_relative, ExtensionFrame, Filtration};
use relfan::linalg::rat::{add_vec, rat, scale_vec, sub_vec, zero_vec};
use relfan::linalg::{QMat, Rat, Subspace};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    rat(r.gen_range(-9..=9), r.gen_range(1..=4))
}

pub fn random_vec(r: &mut ChaCha8Rng, d: usize) -> Vec<Rat> {
    (0..d).map(|_| small_rat(r)).collect()
}

fn combo(r: &mut ChaCha8Rng, basis: &[Vec<Rat>], d: usize) -> Vec<Rat> {
    basis.iter().fold(zero_vec(d), |acc, b| add_vec(&acc, &scale_vec(&small_rat(r), b)))
}

/// The step `W'_{-2}` of `W' = W(N')[-k]`, read off the filtration itself.
pub fn w_prime_minus_2(frame: &ExtensionFrame) -> Subspace {
    frame.w_prime.get(-2)
}

/// `N(e) = N'(a) + u` with `u ∈ W'_{-2}`: admissible by construction.
pub fn admissible_ne(frame: &ExtensionFrame, r: &mut ChaCha8Rng) -> Vec<Rat> {
    let d = frame.rank();
    let a = random_vec(r, d);
    let w2 = w_prime_minus_2(frame);
    let u = combo(r, w2.basis(), d);
    add_vec(&frame.n_prime().mul_vec(&a), &u)
}

/// An admissible value pushed off `Im N' + W'_{-2}`; `None` when that space
/// is everything.
pub fn inadmissible_ne(frame: &ExtensionFrame, r: &mut ChaCha8Rng) -> Option<Vec<Rat>> {
    let p = frame.n_prime().image().sum(&w_prime_minus_2(frame));
    let outside = p.standard_complement();
    let &i = outside.get(r.gen_range(0..outside.len().max(1)))?;
    let mut v = admissible_ne(frame, r);
    let mut t = small_rat(r);
    while t == Rat::from_integer(0.into()) {
        t = small_rat(r);
    }
    v[i] += t;
    Some(v)
}

/// Direct construction of `M(N, W)` for `N|H' = N'`: solve
/// `N'(a) + u = N(e)` with `u ∈ W'_{-2}` as one linear system, build
/// `M_j = W'_j (j < 0)`, `W'_j + Q·(e − a) (j ≥ 0)`, and keep it only if the
/// axioms verify. Independent of the library's criterion code path.
pub fn direct_rmf(frame: &ExtensionFrame, n: &QMat) -> Option<Filtration> {
    let d = frame.rank();
    let ne: Vec<Rat> = (0..d).map(|i| n.get(i, d).clone()).collect();
    let w2 = w_prime_minus_2(frame);
    let mut cols: Vec<Vec<Rat>> = frame.n_prime().columns();
    cols.extend(w2.basis().iter().cloned());
    let system = QMat::with_cols(d, &cols);
    let x = system.solve(&ne)?;
    let a = &x[..d];
    let mut e_tilde = frame.embed(&zero_vec(d));
    e_tilde[d] = Rat::from_integer(1.into());
    let e_tilde = sub_vec(&e_tilde, &frame.embed(a));
    let wp = &frame.w_prime;
    let (lo, hi) = wp.range().unwrap_or((0, 0));
    let mut steps = BTreeMap::new();
    for j in lo.min(-1)..=hi.max(0) + 1 {
        let s = Subspace::span(d + 1, &wp.get(j).basis().iter().map(|b| frame.embed(b)).collect::<Vec<_>>());
        steps.insert(j, if j >= 0 { s.sum(&Subspace::span(d + 1, std::slice::from_ref(&e_tilde))) } else { s });
    }
    steps.insert(hi.max(0) + 2, Subspace::full(d + 1));
    let m = Filtration::new(d + 1, steps).ok()?;
    check_relative(n, &m, &frame.w).is_ok().then_some(m)
}

/// All subspaces of `Q^dim` spanned by vectors with entries in `{-1, 0, 1}`.
fn pool_subspaces(dim: usize) -> Vec<Subspace> {
    let vals = [-1i64, 0, 1];
    let mut vecs: Vec<Vec<Rat>> = vec![vec![]];
    for _ in 0..dim {
        vecs = vecs.into_iter().flat_map(|v| vals.iter().map(move |&x| {
            let mut v = v.clone();
            v.push(rat(x, 1));
            v
        })).collect();
    }
    vecs.retain(|v| v.iter().any(|x| *x != Rat::from_integer(0.into())));
    let mut out: Vec<Subspace> = vec![Subspace::zero(dim)];
    let mut frontier = vec![Subspace::zero(dim)];
    for _ in 0..dim {
        let mut next = Vec::new();
        for s in &frontier {
            for v in &vecs {
                if s.contains(v) {
                    continue;
                }
                let t = s.sum(&Subspace::span(dim, std::slice::from_ref(v)));
                if !out.contains(&t) {
                    out.push(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Exhaustive search over increasing filtrations whose steps in degrees
/// `-3..=1` are pool subspaces (zero below, everything above) for those
/// satisfying both axioms of `M(N, W)`.
pub fn exhaustive_rmf_search(frame: &ExtensionFrame, n: &QMat) -> Vec<Filtration> {
    let dim = frame.dim();
    assert!(dim <= 3, "exhaustive search is for dim <= 3");
    let pool = pool_subspaces(dim);
    let lo = -3;
    let slots = 5;
    let mut found = Vec::new();
    let mut chain: Vec<Subspace> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        pool: &[Subspace],
        n: &QMat,
        w: &Filtration,
        dim: usize,
        lo: i32,
        slots: usize,
        chain: &mut Vec<Subspace>,
        found: &mut Vec<Filtration>,
    ) {
        if chain.len() == slots {
            let mut steps: BTreeMap<i32, Subspace> =
                chain.iter().enumerate().map(|(i, s)| (lo + i as i32, s.clone())).collect();
            steps.insert(lo + slots as i32, Subspace::full(dim));
            if let Ok(m) = Filtration::new(dim, steps) {
                if check_relative(n, &m, w).is_ok() && !found.contains(&m) {
                    found.push(m);
                }
            }
            return;
        }
        let j = chain.len();
        for s in pool {
            if let Some(prev) = chain.last() {
                if !prev.is_subspace_of(s) {
                    continue;
                }
            }
            // N M_j ⊆ M_{j-2}, zero below the window
            let target = if j >= 2 { chain[j - 2].clone() } else { Subspace::zero(dim) };
            if !s.image_under(n).is_subspace_of(&target) {
                continue;
            }
            chain.push(s.clone());
            rec(pool, n, w, dim, lo, slots, chain, found);
            chain.pop();
        }
    }
    rec(&pool, n, &frame.w, dim, lo, slots, &mut chain, &mut found);
    found
}
