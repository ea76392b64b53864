//! Domain types for multi-attribute network selection: attribute specs,
//! decision matrices, weight vectors and rankings.

mod rankers;

pub use rankers::{rank, rank_dia, rank_gra, rank_gra_with, rank_topsis, GraConfig};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether larger attribute values are better (benefit) or worse (cost).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Benefit,
    Cost,
}

/// How an attribute's value is produced for a given network.
///
/// `Fixed(v)` behaves like `UniformRange(v, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueModel {
    Fixed(f64),
    UniformRange(f64, f64),
}

impl ValueModel {
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            ValueModel::Fixed(v) => (v, v),
            ValueModel::UniformRange(lo, hi) => (lo, hi),
        }
    }
}

/// One network attribute: name, units, optimization direction and value model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeSpec {
    pub name: String,
    pub units: String,
    pub direction: Direction,
    pub value_model: ValueModel,
}

impl AttributeSpec {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.value_model.bounds();
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidRange {
                name: self.name.clone(),
                lo,
                hi,
            });
        }
        if lo < 0.0 {
            return Err(Error::InvalidRange {
                name: self.name.clone(),
                lo,
                hi,
            });
        }
        Ok(())
    }
}

/// Alternatives x attributes grid of measured values; input to every ranker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionMatrix {
    pub alternatives: Vec<String>,
    pub attributes: Vec<AttributeSpec>,
    pub values: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(
        alternatives: Vec<String>,
        attributes: Vec<AttributeSpec>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let m = DecisionMatrix {
            alternatives,
            attributes,
            values,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.alternatives.is_empty() {
            return Err(Error::EmptyAlternatives);
        }
        if self.attributes.is_empty() {
            return Err(Error::EmptyAttributes);
        }
        if self.values.len() != self.alternatives.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} value rows for {} alternatives",
                self.values.len(),
                self.alternatives.len()
            )));
        }
        for (row, r) in self.values.iter().enumerate() {
            if r.len() != self.attributes.len() {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} values for {} attributes",
                    row,
                    r.len(),
                    self.attributes.len()
                )));
            }
            for (col, &v) in r.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteValue { row, col });
                }
                if v < 0.0 {
                    return Err(Error::NegativeValue { row, col });
                }
            }
        }
        for spec in &self.attributes {
            spec.validate()?;
        }
        Ok(())
    }

    /// Matrix restricted to the given alternative rows, in the given order.
    pub fn restrict_rows(&self, rows: &[usize]) -> DecisionMatrix {
        DecisionMatrix {
            alternatives: rows.iter().map(|&i| self.alternatives[i].clone()).collect(),
            attributes: self.attributes.clone(),
            values: rows.iter().map(|&i| self.values[i].clone()).collect(),
        }
    }

    fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[j])
    }
}

const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Per-attribute weights, nonnegative and summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        for &w in &weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::NegativeWeight(w));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::WeightSum(sum));
        }
        Ok(WeightVector(weights))
    }

    /// Normalize arbitrary nonnegative weights to sum 1.
    pub fn normalized(raw: &[f64]) -> Result<Self> {
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(Error::WeightSum(sum));
        }
        WeightVector::new(raw.iter().map(|w| w / sum).collect())
    }

    /// Uniform weights over `n` attributes.
    pub fn uniform(n: usize) -> Self {
        WeightVector(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for WeightVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// The three ranking methods under evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Method {
    Topsis,
    Gra,
    Dia,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Topsis, Method::Gra, Method::Dia];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Topsis => "TOPSIS",
            Method::Gra => "GRA",
            Method::Dia => "DIA",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "TOPSIS" => Ok(Method::Topsis),
            "GRA" => Ok(Method::Gra),
            "DIA" => Ok(Method::Dia),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

/// A ranker's output: per-alternative scores and the induced total order.
///
/// `order[0]` is always the selected alternative. Equal scores break toward
/// the lower alternative index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub method: Method,
    pub scores: Vec<f64>,
    pub order: Vec<usize>,
    pub best: usize,
}

impl Ranking {
    /// Build a ranking from scores. `ascending` selects whether smaller
    /// scores rank first (distance-style) or larger (similarity-style).
    fn from_scores(method: Method, scores: Vec<f64>, ascending: bool) -> Ranking {
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| {
            let cmp = scores[a].partial_cmp(&scores[b]).expect("finite scores");
            let cmp = if ascending { cmp } else { cmp.reverse() };
            cmp.then(a.cmp(&b))
        });
        let best = order[0];
        Ranking {
            method,
            scores,
            order,
            best,
        }
    }
}

/// Min-max normalization to [0, 1], direction-aware.
///
/// Benefit columns map their maximum to 1; cost columns map their minimum
/// to 1. Constant columns map to all-1 (every alternative equally ideal).
pub fn normalize_minmax(m: &DecisionMatrix) -> Result<Vec<Vec<f64>>> {
    m.validate()?;
    let n = m.n_alternatives();
    let k = m.n_attributes();
    let mut out = vec![vec![0.0; k]; n];
    for j in 0..k {
        let max = m.column(j).fold(f64::NEG_INFINITY, f64::max);
        let min = m.column(j).fold(f64::INFINITY, f64::min);
        for i in 0..n {
            let r = if max == min {
                1.0
            } else {
                match m.attributes[j].direction {
                    Direction::Benefit => (m.values[i][j] - min) / (max - min),
                    Direction::Cost => (max - m.values[i][j]) / (max - min),
                }
            };
            if !r.is_finite() {
                return Err(Error::NonFiniteValue { row: i, col: j });
            }
            out[i][j] = r;
        }
    }
    Ok(out)
}
