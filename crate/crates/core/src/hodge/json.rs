//! The shared JSON form of degeneration data, matrices and filtrations.
//!
//! Matrices are arrays of rows of exact entries `"p/q"`; integer entries may
//! also be written as JSON numbers on input. The pairing symmetry is implied
//! by the weight.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::rat::{format_vec, parse_rat};
use crate::linalg::{QMat, Rat};

use super::data::{DegenerationData, HodgeNumbers};
use super::filtration::Filtration;
use super::pairing::{Pairing, Symmetry};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            Entry::Int(n) => Ok(Rat::from_integer((*n).into())),
            Entry::Text(s) => parse_rat(s),
        }
    }
}

pub type MatrixJson = Vec<Vec<Entry>>;

pub fn parse_matrix(m: &MatrixJson) -> Result<QMat> {
    let rows: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(Entry::to_rat).collect()).collect::<Result<_>>()?;
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(Error::Parse("ragged matrix".into()));
        }
    }
    Ok(QMat::from_rows(rows))
}

pub fn parse_vector(v: &[Entry]) -> Result<Vec<Rat>> {
    v.iter().map(Entry::to_rat).collect()
}

/// On-disk degeneration data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerationJson {
    pub rank: usize,
    pub pairing: MatrixJson,
    pub gamma: MatrixJson,
    pub weight_k: i32,
    /// `[p, q, h^{p,q}]`.
    pub hodge_numbers: Vec<(i32, i32, usize)>,
    /// `[w, p, q, h^{p,q}(gr^{W'}_w)]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_hodge_numbers: Option<Vec<(i32, i32, i32, usize)>>,
}

impl DegenerationJson {
    pub fn into_data(&self) -> Result<DegenerationData> {
        let gram = parse_matrix(&self.pairing)?;
        let gamma = parse_matrix(&self.gamma)?;
        if gamma.nrows() != self.rank || gram.nrows() != self.rank {
            return Err(Error::InvalidData(format!("declared rank {} does not match the matrices", self.rank)));
        }
        let pairing = Pairing::new(gram, Symmetry::for_weight(self.weight_k))?;
        let hodge: HodgeNumbers = self.hodge_numbers.iter().map(|&(p, q, c)| ((p, q), c)).collect();
        let limit = self.limit_hodge_numbers.as_ref().map(|l| {
            let mut out: BTreeMap<i32, HodgeNumbers> = BTreeMap::new();
            for &(w, p, q, c) in l {
                out.entry(w).or_default().insert((p, q), c);
            }
            out
        });
        DegenerationData::new(pairing, gamma, self.weight_k, hodge, limit)
    }

    pub fn from_data(d: &DegenerationData) -> Self {
        let mat = |m: &QMat| m.to_strings().into_iter().map(|r| r.into_iter().map(Entry::Text).collect()).collect();
        Self {
            rank: d.rank,
            pairing: mat(d.pairing.gram()),
            gamma: mat(&d.gamma),
            weight_k: d.weight_k,
            hodge_numbers: d.hodge_numbers.iter().map(|(&(p, q), &c)| (p, q, c)).collect(),
            limit_hodge_numbers: d.limit_hodge_numbers.as_ref().map(|l| {
                l.iter().flat_map(|(&w, hn)| hn.iter().map(move |(&(p, q), &c)| (w, p, q, c))).collect()
            }),
        }
    }
}

/// `{"<k>": [basis vectors]}` over the jumps of `f`.
pub fn filtration_json(f: &Filtration) -> Value {
    let steps: serde_json::Map<String, Value> =
        f.jumps().map(|(k, s)| (k.to_string(), json!(s.basis().iter().map(|b| format_vec(b)).collect::<Vec<_>>()))).collect();
    json!({"ambient_dim": f.ambient_dim(), "steps": steps})
}
