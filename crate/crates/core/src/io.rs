//! JSON input and output.
//!
//! Accepted inputs:
//!
//! ```text
//! {"generators": [6, 7, 8, 9]}
//! {"m": 6, "kunz": [1, 1, 1, 2, 2]}
//! {"m": 6, "apery": [7, 8, 9, 16, 17]}          (or with a leading 0)
//! {"m": 8, "hyperplanes": [[0, 0, 2, 0, 0, -1, 0], ...]}   ("equalities" also accepted)
//! {"m": 6, "covers": [[0, 1], [0, 2], ...], "subgroup": [0]}  (subgroup optional)
//! ```

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::facetools::{Face, FaceSearch};
use crate::factorization::Trade;
use crate::kunzposet::KunzPoset;
use crate::presentation::ParametricTrade;
use crate::semigroup::{AperyTuple, KunzTuple, NumericalSemigroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Semigroup(NumericalSemigroup),
    Face(Face),
    Poset(KunzPoset),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    generators: Option<Vec<u64>>,
    m: Option<usize>,
    kunz: Option<Vec<u64>>,
    apery: Option<Vec<u64>>,
    #[serde(alias = "equalities")]
    hyperplanes: Option<Vec<Vec<i64>>>,
    covers: Option<Vec<(usize, usize)>>,
    subgroup: Option<Vec<usize>>,
}

impl Input {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON input: {e}")))?;
        let sources = [
            raw.generators.is_some(),
            raw.kunz.is_some(),
            raw.apery.is_some(),
            raw.hyperplanes.is_some(),
            raw.covers.is_some(),
        ];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::InvalidInput(
                "exactly one of generators, kunz, apery, hyperplanes, covers is required".into(),
            ));
        }
        if raw.subgroup.is_some() && raw.covers.is_none() {
            return Err(Error::InvalidInput("subgroup is only accepted together with covers".into()));
        }
        if let Some(g) = raw.generators {
            if raw.m.is_some() {
                return Err(Error::InvalidInput("m is implied by generators".into()));
            }
            return Ok(Self::Semigroup(NumericalSemigroup::new(&g)?));
        }
        let m = raw
            .m
            .ok_or_else(|| Error::InvalidInput("m is required".into()))?;
        if let Some(x) = raw.kunz {
            return Self::from_kunz(m, x);
        }
        if let Some(a) = raw.apery {
            return Self::from_apery(m, a);
        }
        if let Some(rows) = raw.hyperplanes {
            return Ok(Self::Face(Face::from_rows(m, &rows)?));
        }
        let covers = raw.covers.expect("one source is present");
        Ok(Self::Poset(KunzPoset::from_covers(m, &covers, raw.subgroup)?))
    }

    pub fn from_kunz(m: usize, x: Vec<u64>) -> Result<Self> {
        Ok(Self::Semigroup(KunzTuple::new(m, x)?.to_semigroup()?))
    }

    /// Apéry elements of the nonzero residues, optionally preceded by `0`.
    pub fn from_apery(m: usize, mut a: Vec<u64>) -> Result<Self> {
        if a.len() == m && a.first() == Some(&0) {
            a.remove(0);
        }
        Ok(Self::Semigroup(AperyTuple::new(m, a)?.to_semigroup()?))
    }

    pub fn semigroup(&self) -> Result<&NumericalSemigroup> {
        match self {
            Self::Semigroup(s) => Ok(s),
            _ => Err(Error::InvalidInput("this command needs a numerical semigroup".into())),
        }
    }

    pub fn poset(&self) -> Result<KunzPoset> {
        match self {
            Self::Semigroup(s) => Ok(KunzPoset::from_apery(&s.apery())),
            Self::Face(f) => f.poset(),
            Self::Poset(p) => Ok(p.clone()),
        }
    }

    pub fn face(&self) -> Result<Face> {
        match self {
            Self::Semigroup(s) => Ok(Face::of_semigroup(s)),
            Self::Face(f) => Ok(f.clone()),
            Self::Poset(p) => Face::of_poset(p),
        }
    }
}

pub fn poset_json(p: &KunzPoset) -> Value {
    let covers: Vec<[usize; 3]> = p.covers().into_iter().map(|(a, b, l)| [a, b, l]).collect();
    json!({
        "m": p.m(),
        "atoms": p.atoms(),
        "covers": covers,
        "subgroup": p.subgroup(),
    })
}

pub fn trades_json(trades: &[Trade]) -> Value {
    serde_json::to_value(trades).expect("trades serialize")
}

pub fn parametric_json(p: &KunzPoset, trades: &[ParametricTrade]) -> Value {
    Value::Array(
        trades
            .iter()
            .map(|t| {
                let coeffs: Map<String, Value> = p
                    .atoms()
                    .iter()
                    .zip(&t.ell_coeffs)
                    .map(|(a, c)| (a.to_string(), json!(c)))
                    .collect();
                json!({
                    "class": t.class,
                    "ell_coeffs": coeffs,
                    "ell_const": t.ell_const.to_string(),
                    "left": t.left,
                    "right": t.right,
                })
            })
            .collect(),
    )
}

pub fn search_json(result: &FaceSearch) -> Value {
    match result {
        FaceSearch::Found(s) => json!({
            "verdict": "found",
            "generators": s.generators(),
            "kunz": s.kunz_tuple().values(),
        }),
        FaceSearch::ProvablyNone(o) => json!({
            "verdict": "provably_none",
            "obstruction": o,
        }),
        FaceSearch::NoneWithinBound => json!({ "verdict": "none_within_bound" }),
    }
}
