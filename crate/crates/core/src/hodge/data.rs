//! Degeneration data on `H'` and the extension frame `H = H' ⊕ Z·e`.
//!
//! Coordinates on `H` are those of `H'` followed by one coordinate for `e`.
//! Endomorphisms act on column vectors, so an `N` mapping `H` into `H'` is
//! the block matrix `[[R, N(e)], [0, 0]]` with `R` its restriction to `H'`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::rat::{from_int, is_integral};
use crate::linalg::{Int, QMat, Rat, Subspace};

use super::filtration::{monodromy_filtration, Filtration};
use super::nilpotent::{log_unipotent, NilpotentEndo};
use super::pairing::{Pairing, Symmetry};

/// `(p, q) → h^{p,q}`.
pub type HodgeNumbers = BTreeMap<(i32, i32), usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationData {
    pub rank: usize,
    pub pairing: Pairing,
    pub gamma: QMat,
    pub n: NilpotentEndo,
    pub weight_k: i32,
    pub hodge_numbers: HodgeNumbers,
    /// Hodge numbers of `gr^{W'}_w` of the limit, keyed by `w`.
    pub limit_hodge_numbers: Option<BTreeMap<i32, HodgeNumbers>>,
}

impl DegenerationData {
    pub fn new(
        pairing: Pairing,
        gamma: QMat,
        weight_k: i32,
        hodge_numbers: HodgeNumbers,
        limit_hodge_numbers: Option<BTreeMap<i32, HodgeNumbers>>,
    ) -> Result<Self> {
        let rank = gamma.nrows();
        if !gamma.is_square() || pairing.dim() != rank {
            return Err(Error::InvalidData("monodromy and pairing sizes disagree".into()));
        }
        if !gamma.is_integral() {
            return Err(Error::InvalidData("monodromy must be an integer matrix".into()));
        }
        if weight_k >= 0 {
            return Err(Error::InvalidData(format!("weight must be negative, got {weight_k}")));
        }
        if pairing.symmetry() != Symmetry::for_weight(weight_k) {
            return Err(Error::InvalidData(format!(
                "a weight-{weight_k} pairing must be {:?}",
                Symmetry::for_weight(weight_k)
            )));
        }
        let n = log_unipotent(&gamma)?;
        if !pairing.preserved_by(&gamma) {
            return Err(Error::InvalidData("monodromy does not preserve the pairing".into()));
        }
        if !pairing.infinitesimally_preserved_by(n.matrix()) {
            return Err(Error::InvariantViolation("log of monodromy is not in g'".into()));
        }
        let data = Self { rank, pairing, gamma, n, weight_k, hodge_numbers, limit_hodge_numbers };
        data.validate_hodge()?;
        Ok(data)
    }

    fn validate_hodge(&self) -> Result<()> {
        if !self.hodge_numbers.is_empty() {
            if let Some(((p, q), _)) = self.hodge_numbers.iter().find(|((p, q), _)| p + q != self.weight_k) {
                return Err(Error::InvalidData(format!("hodge type ({p},{q}) has the wrong weight")));
            }
            let total: usize = self.hodge_numbers.values().sum();
            if total != self.rank {
                return Err(Error::InvalidData(format!("hodge numbers sum to {total}, rank is {}", self.rank)));
            }
        }
        if let Some(limit) = &self.limit_hodge_numbers {
            let wp = self.w_prime();
            for (w, hn) in limit {
                if let Some(((p, q), _)) = hn.iter().find(|((p, q), _)| p + q != *w) {
                    return Err(Error::InvalidData(format!("limit type ({p},{q}) is not of weight {w}")));
                }
                let total: usize = hn.values().sum();
                if total != wp.gr_dim(*w) {
                    return Err(Error::InvalidData(format!(
                        "limit hodge numbers of weight {w} sum to {total}, graded piece has dimension {}",
                        wp.gr_dim(*w)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `W' = W(N')[-k]`, centred at `k`.
    pub fn w_prime(&self) -> Filtration {
        monodromy_filtration(&self.n, 0).shift(-self.weight_k)
    }

    pub fn n_prime(&self) -> &QMat {
        self.n.matrix()
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionFrame {
    pub base: DegenerationData,
    pub w: Filtration,
    pub w_prime: Filtration,
    pub pairing0: Pairing,
    /// `Im N'`, `Ker N'` and `W'_{-2}` on `H'`.
    pub im_n: Subspace,
    pub ker_n: Subspace,
    pub w_prime_m2: Subspace,
    /// `Im N' + W'_{-2}`: the admissible values of `N(e)`.
    pub admissible_values: Subspace,
}

impl ExtensionFrame {
    pub fn new(base: DegenerationData) -> Result<Self> {
        let d = base.rank;
        let k = base.weight_k;
        let incl = inclusion(d);
        let w = Filtration::new(
            d + 1,
            BTreeMap::from([
                (k, Subspace::full(d).image_under(&incl)),
                (0, Subspace::full(d + 1)),
            ]),
        )?;
        let w_prime = base.w_prime();
        let im_n = base.n_prime().image();
        let ker_n = base.n_prime().kernel();
        let w_prime_m2 = w_prime.get(-2);
        let admissible_values = im_n.sum(&w_prime_m2);
        let pairing0 = Pairing::new(QMat::identity(1), Symmetry::Symmetric)?;
        Ok(Self { base, w, w_prime, pairing0, im_n, ker_n, w_prime_m2, admissible_values })
    }

    /// `rank H'`; also the coordinate index of `e`.
    pub fn rank(&self) -> usize {
        self.base.rank
    }

    pub fn dim(&self) -> usize {
        self.base.rank + 1
    }

    pub fn weight_k(&self) -> i32 {
        self.base.weight_k
    }

    pub fn n_prime(&self) -> &QMat {
        self.base.n_prime()
    }

    pub fn e(&self) -> Vec<Rat> {
        crate::linalg::rat::unit_vec(self.dim(), self.rank())
    }

    pub fn embed(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        out.push(Rat::zero());
        out
    }

    /// `N` with restriction `N'` and the given `N(e)`.
    pub fn extend(&self, ne: &[Rat]) -> QMat {
        self.extend_with(self.n_prime(), ne)
    }

    pub fn extend_with(&self, restriction: &QMat, ne: &[Rat]) -> QMat {
        let d = self.rank();
        assert_eq!(ne.len(), d);
        QMat::block(
            restriction,
            &QMat::with_cols(d, &[ne.to_vec()]),
            &QMat::zeros(1, d),
            &QMat::zeros(1, 1),
        )
    }

    /// Restriction to `H'` and the value `N(e)`, provided `N(H) ⊆ H'`.
    pub fn split(&self, n: &QMat) -> Result<(QMat, Vec<Rat>)> {
        let d = self.rank();
        if n.nrows() != d + 1 || n.ncols() != d + 1 {
            return Err(Error::PreconditionViolated(format!(
                "endomorphism has shape {}x{}, expected {}x{}",
                n.nrows(),
                n.ncols(),
                d + 1,
                d + 1
            )));
        }
        if !n.row(d).iter().all(Zero::is_zero) {
            return Err(Error::PreconditionViolated("N does not map H into H'".into()));
        }
        Ok((n.submatrix(0..d, 0..d), n.col(d)[..d].to_vec()))
    }

    /// Like [`Self::split`], additionally requiring the restriction to be `N'`.
    pub fn split_exact(&self, n: &QMat) -> Result<Vec<Rat>> {
        let (r, ne) = self.split(n)?;
        if &r != self.n_prime() {
            return Err(Error::PreconditionViolated("N does not restrict to N' on H'".into()));
        }
        Ok(ne)
    }

    /// `t` with `R = t·N'`, if any. The zero restriction gives `t = 0`.
    pub fn restriction_scale(&self, r: &QMat) -> Option<Rat> {
        if r.is_zero() {
            return Some(Rat::zero());
        }
        let np = self.n_prime();
        let d = self.rank();
        let (i, j) = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| !np.get(i, j).is_zero())?;
        let t = r.get(i, j) / np.get(i, j);
        (np.scale(&t) == *r).then_some(t)
    }
}

/// The inclusion `H' → H` as a `(d+1) × d` matrix.
pub fn inclusion(d: usize) -> QMat {
    QMat::block(&QMat::identity(d), &QMat::zeros(d, 0), &QMat::zeros(1, d), &QMat::zeros(1, 0))
}

/// `γ` with `γ|H' = (γ')^k` and `γ(e) = e + h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaElement {
    pub power_k: i64,
    pub h: Vec<Int>,
}

impl GammaElement {
    pub fn identity(rank: usize) -> Self {
        Self { power_k: 0, h: vec![Int::zero(); rank] }
    }

    pub fn h_rat(&self) -> Vec<Rat> {
        self.h.iter().map(from_int).collect()
    }

    /// The `H'`-block `(γ')^k`.
    pub fn restriction(&self, frame: &ExtensionFrame) -> QMat {
        gamma_power(&frame.base.gamma, self.power_k)
    }

    /// The full matrix on `H`, after checking membership in `G_Z`.
    pub fn matrix(&self, frame: &ExtensionFrame) -> Result<QMat> {
        let d = frame.rank();
        if self.h.len() != d {
            return Err(Error::NotInGamma(format!("h has length {}, expected {d}", self.h.len())));
        }
        let r = self.restriction(frame);
        if !r.is_integral() {
            return Err(Error::NotInGamma("restriction is not integral".into()));
        }
        if !frame.base.pairing.preserved_by(&r) {
            return Err(Error::NotInGamma("restriction does not preserve the pairing".into()));
        }
        let g = QMat::block(&r, &QMat::with_cols(d, &[self.h_rat()]), &QMat::zeros(1, d), &QMat::identity(1));
        debug_assert!(is_integral(&g.col(d)) && g.get(d, d).is_one());
        Ok(g)
    }
}

pub fn gamma_power(gamma: &QMat, k: i64) -> QMat {
    if k >= 0 {
        gamma.pow(k as u32)
    } else {
        gamma.inverse().expect("unipotent matrices are invertible").pow((-k) as u32)
    }
}
