//! JSON wire formats for matrices, lagrangians, monodromies and cocycles.

use serde::{Deserialize, Serialize};

use crate::bundle::Monodromy;
use crate::circle::{NiceCochain, PiecewiseCocycle};
use crate::error::{Error, Result};
use crate::maslov::{AmbientLagrangian, Lagrangian};
use crate::matrix::Mat;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::symplectic::SpMat;

/// A rational entry: a JSON integer or a `"n"` / `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

impl RatJson {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            RatJson::Int(n) => Ok(Rat::from_integer((*n).into())),
            RatJson::Str(s) => parse_rat(s),
        }
    }

    pub fn from_rat(r: &Rat) -> Self {
        RatJson::Str(format_rat(r))
    }
}

fn rats(v: &[RatJson]) -> Result<Vec<Rat>> {
    v.iter().map(RatJson::to_rat).collect()
}

fn rats_json(v: &[Rat]) -> Vec<RatJson> {
    v.iter().map(RatJson::from_rat).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<RatJson>>,
}

impl MatrixJson {
    pub fn to_mat(&self) -> Result<Mat> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Parse(format!("entries do not form a {}x{} array", self.rows, self.cols)));
        }
        let data = self.entries.iter().flat_map(|r| r.iter()).map(RatJson::to_rat).collect::<Result<Vec<_>>>()?;
        Mat::new(self.rows, self.cols, data)
    }

    pub fn from_mat(m: &Mat) -> Self {
        let entries = (0..m.rows()).map(|i| rats_json(m.row(i))).collect();
        MatrixJson { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn to_sp(&self) -> Result<SpMat> {
        SpMat::new(self.to_mat()?)
    }
}

/// `{"g": g, "basis": matrix}` with basis vectors as columns, or
/// `{"g": 1, "direction": ["p", "q"]}` for a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianJson {
    pub g: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<[RatJson; 2]>,
}

impl LagrangianJson {
    pub fn to_lagrangian(&self) -> Result<Lagrangian> {
        match (&self.basis, &self.direction) {
            (Some(b), None) => Lagrangian::from_basis(&b.to_mat()?, self.g),
            (None, Some([p, q])) => {
                if self.g != 1 {
                    return Err(Error::invalid("a direction describes a lagrangian only in genus 1"));
                }
                Lagrangian::line(p.to_rat()?, q.to_rat()?)
            }
            _ => Err(Error::Parse("lagrangian needs exactly one of \"basis\" or \"direction\"".into())),
        }
    }

    pub fn from_lagrangian(l: &Lagrangian) -> Self {
        LagrangianJson { g: l.genus(), basis: Some(MatrixJson::from_mat(l.basis())), direction: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyJson {
    pub g: usize,
    pub h: usize,
    pub pairs: Vec<[MatrixJson; 2]>,
}

impl MonodromyJson {
    pub fn to_monodromy(&self) -> Result<Monodromy> {
        if self.pairs.len() != self.h {
            return Err(Error::Parse(format!("h = {} but {} pairs given", self.h, self.pairs.len())));
        }
        let pairs = self.pairs.iter().map(|[a, b]| Ok((a.to_sp()?, b.to_sp()?))).collect::<Result<Vec<_>>>()?;
        let m = Monodromy::new(pairs)?;
        if m.fiber_genus() != self.g {
            return Err(Error::invalid(format!("g = {} but the matrices have genus {}", self.g, m.fiber_genus())));
        }
        Ok(m)
    }

    pub fn from_monodromy(m: &Monodromy) -> Self {
        let pairs = m.pairs().iter().map(|(a, b)| [MatrixJson::from_mat(a.mat()), MatrixJson::from_mat(b.mat())]).collect();
        MonodromyJson { g: m.fiber_genus(), h: m.base_genus(), pairs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub breaks: Vec<RatJson>,
    pub values: Vec<i64>,
}

impl CochainJson {
    pub fn to_cochain(&self) -> Result<NiceCochain> {
        NiceCochain::new(rats(&self.breaks)?, self.values.clone())
    }

    pub fn from_cochain(f: &NiceCochain) -> Self {
        CochainJson { breaks: rats_json(f.breaks()), values: f.values().to_vec() }
    }
}

/// `{"m", "cochain"}` for `m · standard + δf`, or an explicit arrangement
/// with `cells` as `[i, j, k, value]` quadruples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleJson {
    Decomposed { m: i64, cochain: CochainJson },
    Explicit { a_breaks: Vec<RatJson>, b_breaks: Vec<RatJson>, diag: Vec<RatJson>, cells: Vec<(usize, usize, usize, i64)> },
}

impl CocycleJson {
    pub fn to_cocycle(&self) -> Result<PiecewiseCocycle> {
        match self {
            CocycleJson::Decomposed { m, cochain } => PiecewiseCocycle::from_standard_plus_coboundary(*m, &cochain.to_cochain()?),
            CocycleJson::Explicit { a_breaks, b_breaks, diag, cells } => {
                PiecewiseCocycle::from_cells(rats(a_breaks)?, rats(b_breaks)?, rats(diag)?, cells)
            }
        }
    }

    pub fn explicit(t: &PiecewiseCocycle) -> Self {
        CocycleJson::Explicit {
            a_breaks: rats_json(t.a_breaks()),
            b_breaks: rats_json(t.b_breaks()),
            diag: rats_json(t.diag()),
            cells: t.cells(),
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}
