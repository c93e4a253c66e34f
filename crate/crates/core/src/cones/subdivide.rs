//! Subdivision of a cone along the cube grid of a fan.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rat::{floor, from_int};
use crate::linalg::{Int, QMat, Rat};

use super::cone::{flatten, Cone, Functional};
use super::fan::LazyFan;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub cone: Cone,
    pub host: Cone,
}

fn ceil(r: &Rat) -> Int {
    -floor(&-r)
}

fn combine(a: &Functional, sa: &Rat, b: &Functional, sb: &Rat) -> Functional {
    let mut out: Vec<(usize, Rat)> = a.iter().map(|(i, x)| (*i, x * sa)).collect();
    for (i, x) in b {
        match out.iter_mut().find(|(j, _)| j == i) {
            Some((_, y)) => *y += x * sb,
            None => out.push((*i, x * sb)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out.sort_by_key(|(i, _)| *i);
    out
}

/// Splits `c` into pieces, each inside a cone of `fan`, and verifies that the
/// pieces cover `c` with disjoint relative interiors.
pub fn subdivide_against(c: &Cone, fan: &dyn LazyFan) -> Result<Vec<Piece>> {
    if c.size() != fan.size() {
        return Err(Error::MixedAmbient);
    }
    let host_of = |p: &Cone| -> Result<Cone> {
        let host = fan
            .cell_containing(&p.interior_point())
            .ok_or_else(|| Error::NoCover(format!("no cell of {} contains the piece {:?}", fan.name(), p)))?;
        if !p.is_subcone_of(&host)? {
            return Err(Error::NoCover(format!("piece {p:?} is not inside its cell {host:?}")));
        }
        Ok(host)
    };
    if c.is_zero() {
        return Ok(vec![Piece { cone: c.clone(), host: host_of(c).unwrap_or_else(|_| c.clone()) }]);
    }
    let Some(grid) = fan.grid_for(c)? else {
        return Ok(vec![Piece { cone: c.clone(), host: host_of(c)? }]);
    };
    // Already inside one cell: the trivial subdivision.
    if let Some(host) = fan.cell_containing(&c.interior_point()) {
        if c.is_subcone_of(&host)? {
            return Ok(vec![Piece { cone: c.clone(), host }]);
        }
    }
    let rays: Vec<Functional> = c.ray_matrices().iter().map(flatten).collect();
    let mut pieces = vec![c.clone()];
    for cj in &grid.coords {
        let mut ratios = Vec::with_capacity(rays.len());
        for r in &rays {
            let t = Cone::eval(&grid.scale, r);
            if !t.is_positive() {
                return Err(Error::PreconditionViolated("a generator has non-positive scale".into()));
            }
            ratios.push(Cone::eval(cj, r) / t);
        }
        let lo = floor(ratios.iter().min().expect("nonempty"));
        let mut hi = ceil(ratios.iter().max().expect("nonempty"));
        if hi == lo {
            hi += 1;
        }
        let mut next = Vec::new();
        for p in &pieces {
            let mut n = lo.clone();
            while n < hi {
                let nr = from_int(&n);
                let lower = combine(cj, &Rat::one(), &grid.scale, &-nr.clone());
                let upper = combine(&grid.scale, &(nr + Rat::one()), cj, &-Rat::one());
                let q = p.intersect_halfspaces(&[lower, upper])?;
                if q.dim() == c.dim() {
                    next.push(q);
                }
                n += 1;
            }
        }
        pieces = next;
    }
    pieces.sort();
    pieces.dedup();
    verify_cover(c, &pieces)?;
    pieces.iter().map(|p| Ok(Piece { cone: p.clone(), host: host_of(p)? })).collect()
}

/// Exact checks that `pieces` subdivide `c`: containment both ways on rays
/// and sample points, and lower-dimensional pairwise overlaps.
pub fn verify_cover(c: &Cone, pieces: &[Cone]) -> Result<()> {
    let fail = |why: String| Err(Error::InvariantViolation(format!("subdivision: {why}")));
    for p in pieces {
        if !p.is_subcone_of(c)? {
            return fail(format!("piece {p:?} leaves the cone"));
        }
    }
    let mut samples: Vec<QMat> = c.ray_matrices();
    let centre = c.interior_point();
    samples.extend(c.ray_matrices().iter().map(|r| centre.add(r)));
    samples.push(centre);
    for s in &samples {
        let mut hit = false;
        for p in pieces {
            if p.contains(s)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return fail("a sample point of the cone is in no piece".into());
        }
    }
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i + 1..] {
            if a.interior_point() == b.interior_point() || a.intersect(b)?.dim() >= c.dim() {
                return fail(format!("pieces {a:?} and {b:?} overlap"));
            }
        }
    }
    Ok(())
}
