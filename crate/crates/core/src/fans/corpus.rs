//! Seeded corpora of admissible cones: rays and commuting pairs over a random
//! class in `P/Q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::rat::{add_vec, rat, scale_vec, zero_vec};
use crate::linalg::{QMat, Rat};

use super::params::SigmaParams;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusItem {
    pub kind: &'static str,
    #[serde(serialize_with = "ser_mats")]
    pub generators: Vec<QMat>,
}

fn ser_mats<S: serde::Serializer>(m: &[QMat], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    m.iter().map(QMat::to_strings).collect::<Vec<_>>().serialize(s)
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn combo(rng: &mut ChaCha8Rng, basis: &[Vec<Rat>], d: usize) -> Vec<Rat> {
    basis.iter().fold(zero_vec(d), |acc, b| add_vec(&acc, &scale_vec(&small_rat(rng), b)))
}

fn scaled(params: &SigmaParams, t: &Rat, w: &[Rat]) -> QMat {
    let f = &params.frame;
    f.extend_with(&f.n_prime().scale(t), &scale_vec(t, w))
}

/// `size` items: two rays for every commuting pair, plus `inadmissible`
/// rays with `N(e) ∉ P` when `P` is proper.
pub fn generate_corpus(params: &SigmaParams, size: usize, inadmissible: usize, seed: u64) -> Vec<CorpusItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = params.rank();
    let mut p_basis = params.section.clone();
    p_basis.extend(params.basis_e.iter().cloned());
    let scales = [rat(1, 1), rat(2, 1), rat(1, 2), rat(3, 1)];
    let mut out = Vec::with_capacity(size + inadmissible);
    for i in 0..size {
        let w = combo(&mut rng, &p_basis, d);
        let t1 = scales[rng.gen_range(0..scales.len())].clone();
        if i % 3 == 2 {
            let q = combo(&mut rng, &params.basis_e, d);
            let t2 = scales[rng.gen_range(0..scales.len())].clone();
            let a = scaled(params, &t1, &w);
            let b = scaled(params, &t2, &add_vec(&w, &q));
            if a.commutator(&b).is_zero() {
                out.push(CorpusItem { kind: "pair", generators: vec![a, b] });
                continue;
            }
        }
        out.push(CorpusItem { kind: "ray", generators: vec![scaled(params, &t1, &w)] });
    }
    let outside: Vec<usize> = params.pq.p.standard_complement();
    for _ in 0..inadmissible {
        let Some(&i) = outside.first() else { break };
        let mut w = combo(&mut rng, &p_basis, d);
        w[i] += rat(rng.gen_range(1..=5), 1);
        out.push(CorpusItem { kind: "inadmissible", generators: vec![params.frame.extend(&w)] });
    }
    out
}
