//! The data `(L, P, Q, s, e_j)` behind the cube-cell fan, and the cells
//! `σ(x, n)` themselves.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::hodge::ExtensionFrame;
use crate::linalg::rat::{add_vec, floor, format_rat, from_int, lcm_denominators, scale_vec, sub_vec, zero_vec};
use crate::linalg::{order_in_quotient, snf, Int, QMat, Rat, Subspace, ZLattice};

/// `P` and `Q`, plus the alternative pair used for weight −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQ {
    /// `P = Im N' + W'_{-2}`, `Q = Ker N' ∩ W'_{-2}`.
    pub p: Subspace,
    pub q: Subspace,
    /// For weight −1: `P = Im N'`, `Q = Ker N' ∩ P`.
    pub alt: Option<(Subspace, Subspace)>,
}

impl PQ {
    /// Whether the two definitions agree (vacuously when only one applies).
    pub fn agree(&self) -> bool {
        self.alt.as_ref().is_none_or(|(p, q)| *p == self.p && *q == self.q)
    }
}

pub fn compute_pq(frame: &ExtensionFrame) -> PQ {
    let p = frame.im_n.sum(&frame.w_prime_m2);
    let q = frame.ker_n.intersect(&frame.w_prime_m2);
    let alt = (frame.weight_k() == -1).then(|| {
        let p5 = frame.im_n.clone();
        let q5 = frame.ker_n.intersect(&p5);
        (p5, q5)
    });
    PQ { p, q, alt }
}

/// `(x, n)`: `x` is the canonical representative `s(x)` of its class in
/// `P/Q`, `n ∈ Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex {
    pub x: Vec<Rat>,
    pub n: Vec<Int>,
}

impl CellIndex {
    pub fn new(x: Vec<Rat>, n: Vec<i64>) -> Self {
        Self { x, n: n.into_iter().map(Int::from).collect() }
    }
}

impl Serialize for CellIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            x: Vec<String>,
            n: Vec<String>,
        }
        Repr { x: self.x.iter().map(format_rat).collect(), n: self.n.iter().map(ToString::to_string).collect() }
            .serialize(s)
    }
}

#[derive(Clone, Debug)]
pub struct SigmaParams {
    pub frame: ExtensionFrame,
    pub l: ZLattice,
    pub pq: PQ,
    pub p_l: ZLattice,
    pub q_l: ZLattice,
    /// Images under `s` of a Z-basis of `(P∩L)/(Q∩L)`; together with
    /// `basis_e` a Z-basis of `P∩L`.
    pub section: Vec<Vec<Rat>>,
    /// Z-basis `e_j` of `Q∩L`.
    pub basis_e: Vec<Vec<Rat>>,
    /// Columns `section ++ basis_e`, for coordinates on `P`.
    p_frame: QMat,
    /// Rows of a left inverse of `p_frame` reading off `e_j`-coordinates;
    /// they vanish on the section.
    e_dual: Vec<Vec<Rat>>,
}

fn default_lattice(frame: &ExtensionFrame) -> ZLattice {
    let d = frame.rank();
    let mut gens: Vec<Vec<Rat>> = (0..d).map(|i| crate::linalg::rat::unit_vec(d, i)).collect();
    gens.extend(frame.n_prime().columns());
    ZLattice::from_generators(d, &gens)
}

/// Extends a Z-basis of the saturated sublattice `sub ⊆ lat` to one of `lat`,
/// returning the added vectors.
fn complement(lat: &ZLattice, sub: &ZLattice) -> Result<Vec<Vec<Rat>>> {
    let b = lat.basis();
    let p = b.len();
    if sub.rank() == 0 {
        return Ok(b);
    }
    let m: Vec<Vec<Int>> = sub
        .basis()
        .iter()
        .map(|v| {
            let c = lat.coords(v).expect("sublattice");
            c.iter().map(|x| x.to_integer()).collect()
        })
        .collect();
    let smith = snf(&m, p);
    if smith.invariants().iter().any(|x| !x.is_one()) || smith.invariants().len() != m.len() {
        return Err(Error::InvariantViolation("Q∩L is not saturated in P∩L".into()));
    }
    let v = QMat::from_rows(smith.v.iter().map(|r| r.iter().map(from_int).collect()).collect());
    let v_inv = v.inverse().expect("unimodular");
    Ok((m.len()..p)
        .map(|i| {
            let coeffs = v_inv.row(i);
            (0..lat.ambient_dim())
                .map(|j| coeffs.iter().zip(&b).fold(Rat::zero(), |acc, (c, bk)| acc + c * &bk[j]))
                .collect()
        })
        .collect())
}

impl SigmaParams {
    /// Default data: `L = H' + N'(H')`.
    pub fn default_params(frame: &ExtensionFrame) -> Result<Self> {
        Self::with_lattice(frame, None)
    }

    pub fn with_lattice(frame: &ExtensionFrame, l: Option<ZLattice>) -> Result<Self> {
        let min = default_lattice(frame);
        let l = match l {
            None => min,
            Some(l) => {
                if l.ambient_dim() != frame.rank() || !min.is_sublattice_of(&l) {
                    return Err(Error::PreconditionViolated("L must contain H' + N'(H')".into()));
                }
                l
            }
        };
        let pq = compute_pq(frame);
        let p_l = l.intersect_subspace(&pq.p);
        let q_l = l.intersect_subspace(&pq.q);
        let section = complement(&p_l, &q_l)?;
        let basis_e = q_l.basis();
        Self::assemble(frame.clone(), l, pq, p_l, q_l, section, basis_e)
    }

    /// Cube data on an explicit grid: `P = Q = span(basis)`, zero section.
    pub fn on_grid(frame: &ExtensionFrame, basis: Vec<Vec<Rat>>) -> Result<Self> {
        let d = frame.rank();
        let span = Subspace::span(d, &basis);
        let lat = ZLattice::from_generators(d, &basis);
        let pq = PQ { p: span.clone(), q: span, alt: None };
        Self::assemble(frame.clone(), lat.clone(), pq, lat.clone(), lat, Vec::new(), basis)
    }

    fn assemble(
        frame: ExtensionFrame,
        l: ZLattice,
        pq: PQ,
        p_l: ZLattice,
        q_l: ZLattice,
        section: Vec<Vec<Rat>>,
        basis_e: Vec<Vec<Rat>>,
    ) -> Result<Self> {
        let d = frame.rank();
        let mut cols = section.clone();
        cols.extend(basis_e.iter().cloned());
        let p_frame = QMat::with_cols(d, &cols);
        let e_dual = if cols.is_empty() {
            Vec::new()
        } else {
            let ft = p_frame.transpose();
            let left = ft.mul(&p_frame).inverse().expect("independent columns").mul(&ft);
            left.rows()[section.len()..].to_vec()
        };
        let params = Self { frame, l, pq, p_l, q_l, section, basis_e, p_frame, e_dual };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        let mut all = self.section.clone();
        all.extend(self.basis_e.iter().cloned());
        if ZLattice::from_generators(self.frame.rank(), &all) != self.p_l || all.len() != self.p_l.rank() {
            return Err(Error::InvariantViolation("section and e_j do not form a basis of P∩L".into()));
        }
        if self.p_l.rank() != self.pq.p.dim() {
            return Err(Error::InvariantViolation("P∩L does not span P".into()));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.basis_e.len()
    }

    pub fn rank(&self) -> usize {
        self.frame.rank()
    }

    /// Coordinates of `w ∈ P` in `section ++ basis_e`.
    fn p_coords(&self, w: &[Rat]) -> Result<Vec<Rat>> {
        if self.p_frame.ncols() == 0 {
            return if w.iter().all(Zero::is_zero) {
                Ok(Vec::new())
            } else {
                Err(Error::PreconditionViolated("vector is not in P".into()))
            };
        }
        self.p_frame
            .solve(w)
            .ok_or_else(|| Error::PreconditionViolated("vector is not in P".into()))
    }

    /// `s(x)` for the class `x` of `w ∈ P`: the canonical representative.
    pub fn section_of(&self, w: &[Rat]) -> Result<Vec<Rat>> {
        let c = self.p_coords(w)?;
        let mut out = zero_vec(self.rank());
        for (ci, v) in c.iter().zip(&self.section) {
            if !ci.is_zero() {
                out = add_vec(&out, &scale_vec(ci, v));
            }
        }
        Ok(out)
    }

    /// `a(x)`, computed as the order of `x` in `P/((P∩L) + Q)` and as the
    /// least `a` with `a·x` in the image of `P∩L`; the two must agree.
    pub fn a_of(&self, w: &[Rat]) -> Result<Int> {
        let c = self.p_coords(w)?;
        let by_section = lcm_denominators(&c[..self.section.len()]);
        let by_quotient = order_in_quotient(w, &self.p_l, &self.pq.q)?;
        if by_section != by_quotient {
            return Err(Error::InvariantViolation(format!(
                "a(x) disagrees: {by_section} via the section, {by_quotient} via the quotient"
            )));
        }
        Ok(by_section)
    }

    /// Linear functionals giving `e_j`-coordinates on `P`, zero on the section.
    pub fn e_dual(&self) -> &[Vec<Rat>] {
        &self.e_dual
    }

    /// Coordinates of `v ∈ Q` in the basis `e_j`.
    pub fn e_coords(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let c = self.p_coords(v)?;
        let (sec, e) = c.split_at(self.section.len());
        if sec.iter().any(|x| !x.is_zero()) {
            return Err(Error::PreconditionViolated("vector is not in Q".into()));
        }
        Ok(e.to_vec())
    }

    /// The index with `s(x)` for the class of `w`.
    pub fn canonical_index(&self, w: &[Rat], n: Vec<Int>) -> Result<CellIndex> {
        Ok(CellIndex { x: self.section_of(w)?, n })
    }

    /// `N(e) = s(x) + a(x)⁻¹ Σ t_j e_j`.
    pub fn vertex(&self, x: &[Rat], a: &Int, t: &[Int]) -> Vec<Rat> {
        let inv = Rat::new(Int::one(), a.clone());
        t.iter().zip(&self.basis_e).fold(x.to_vec(), |acc, (tj, ej)| {
            if tj.is_zero() {
                acc
            } else {
                add_vec(&acc, &scale_vec(&(from_int(tj) * &inv), ej))
            }
        })
    }

    /// The `2^m` vertex values `N(e)` of `σ(x, n)`.
    pub fn vertices(&self, idx: &CellIndex) -> Result<Vec<Vec<Rat>>> {
        let a = self.a_of(&idx.x)?;
        let m = self.m();
        Ok((0..1u64 << m)
            .map(|mask| {
                let t: Vec<Int> = (0..m).map(|j| &idx.n[j] + Int::from((mask >> j) & 1)).collect();
                self.vertex(&idx.x, &a, &t)
            })
            .collect())
    }

    /// `σ(x, n)`; vertices of a parallelotope at height one are extreme.
    pub fn cell(&self, idx: &CellIndex) -> Result<Cone> {
        if idx.n.len() != self.m() {
            return Err(Error::PreconditionViolated(format!("index has {} entries, m = {}", idx.n.len(), self.m())));
        }
        if self.frame.n_prime().is_zero() {
            return Ok(Cone::zero(self.frame.dim()));
        }
        let mats: Vec<QMat> = self.vertices(idx)?.iter().map(|v| self.frame.extend(v)).collect();
        Ok(Cone::from_extreme_matrices_unchecked(self.frame.dim(), &mats))
    }

    /// `t` with `N|H' = t·N'` and the normalized value `N(e)/t`, for `t > 0`.
    pub fn normalize(&self, n: &QMat) -> Option<(Rat, Vec<Rat>)> {
        let (r, ne) = self.frame.split(n).ok()?;
        let t = self.frame.restriction_scale(&r)?;
        if !t.is_positive() || self.frame.n_prime().is_zero() {
            return None;
        }
        Some((t.clone(), scale_vec(&(Rat::one() / t), &ne)))
    }

    /// The cell whose cube contains `N(e)/t`, lower faces included.
    pub fn index_containing(&self, n: &QMat) -> Option<CellIndex> {
        let (_, w) = self.normalize(n)?;
        let x = self.section_of(&w).ok()?;
        let a = self.a_of(&x).ok()?;
        let c = self.e_coords(&sub_vec(&w, &x)).ok()?;
        let af = from_int(&a);
        Some(CellIndex { x, n: c.iter().map(|cj| floor(&(cj * &af))).collect() })
    }

    /// Default coset list: `0` and half of each section vector.
    pub fn default_cosets(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![zero_vec(self.rank())];
        let half = Rat::new(Int::one(), Int::from(2));
        out.extend(self.section.iter().map(|c| scale_vec(&half, c)));
        out
    }

    /// Indices `(x, n)` with `x` in `cosets` and `|n_j| ≤ bound`.
    pub fn window_indices(&self, bound: i64, cosets: &[Vec<Rat>]) -> Result<Vec<CellIndex>> {
        let m = self.m();
        let side = (2 * bound + 1).max(0) as u64;
        let mut out = Vec::new();
        for w in cosets {
            let x = self.section_of(w)?;
            for k in 0..side.pow(m as u32) {
                let mut rest = k;
                let n = (0..m)
                    .map(|_| {
                        let v = (rest % side) as i64 - bound;
                        rest /= side;
                        Int::from(v)
                    })
                    .collect();
                out.push(CellIndex { x: x.clone(), n });
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `lcm` of denominators of `L`, for reports.
    pub fn lattice_denominator(&self) -> Int {
        self.l.denominator().clone()
    }
}

/// Lowest common multiple of a list of positive integers.
pub fn lcm_all(xs: &[Int]) -> Int {
    xs.iter().fold(Int::one(), |acc, x| acc.lcm(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::rat::{int_vec, rat, ri, unit_vec};

    #[test]
    fn fix_a_params() {
        let f = fixtures::fix_a();
        let pq = compute_pq(&f);
        let e1 = Subspace::span(2, &[unit_vec(2, 0)]);
        assert_eq!((pq.p.clone(), pq.q.clone()), (e1.clone(), e1));
        assert!(pq.agree());
        let p = SigmaParams::default_params(&f).unwrap();
        assert_eq!(p.l, ZLattice::standard(2));
        assert_eq!(p.m(), 1);
        assert!(p.section.is_empty());
        assert_eq!(p.a_of(&int_vec(&[0, 0])).unwrap(), Int::one());
        let cell = p.cell(&CellIndex::new(int_vec(&[0, 0]), vec![0])).unwrap();
        assert_eq!(cell.faces().len(), 4);
        let n = f.extend(&[rat(3, 2), ri(0)]);
        assert_eq!(p.index_containing(&n), Some(CellIndex::new(int_vec(&[0, 0]), vec![1])));
        assert_eq!(p.index_containing(&f.extend(&int_vec(&[0, 1]))), None);
        let c0 = p.cell(&CellIndex::new(int_vec(&[0, 0]), vec![0])).unwrap();
        let c1 = p.cell(&CellIndex::new(int_vec(&[0, 0]), vec![-1])).unwrap();
        assert_eq!(c0.intersect(&c1).unwrap(), Cone::polyhedral(3, &[f.extend(&int_vec(&[0, 0]))]).unwrap());
    }

    #[test]
    fn fix_d_section() {
        let f = fixtures::fix_d();
        let p = SigmaParams::default_params(&f).unwrap();
        assert!(!p.section.is_empty());
        assert!(p.pq.agree());
        for c in &p.section {
            let half = scale_vec(&rat(1, 2), c);
            assert_eq!(p.a_of(&half).unwrap(), Int::from(2));
            assert_eq!(p.a_of(c).unwrap(), Int::one());
        }
        // section representatives are canonical modulo Q
        for q in &p.basis_e {
            let w = add_vec(&p.section[0], &scale_vec(&rat(3, 7), q));
            assert_eq!(p.section_of(&w).unwrap(), p.section[0]);
        }
    }

    #[test]
    fn zero_monodromy() {
        let f = fixtures::trivial();
        let p = SigmaParams::default_params(&f).unwrap();
        assert_eq!(p.m(), 0);
        assert!(p.cell(&CellIndex::new(int_vec(&[0, 0]), vec![])).unwrap().is_zero());
    }
}
