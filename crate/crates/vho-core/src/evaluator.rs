//! Criticality analysis of the decision methods themselves: normalize the
//! measured evaluation parameters, map them onto discrete criticality
//! levels, weight the levels, and score each method with a criticality
//! index. The highest index identifies the recommended method.

use serde::{Deserialize, Serialize};

use crate::ahp::{ahp_weights, PairwiseComparisonMatrix};
use crate::decision::{Direction, WeightVector};
use crate::error::{Error, Result};

/// One evaluation parameter (e.g. ranking abnormality, handoff rate).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSpec {
    pub name: String,
    pub direction: Direction,
}

/// Algorithms x parameters grid of measured values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationMatrix {
    pub algorithms: Vec<String>,
    pub parameters: Vec<ParameterSpec>,
    pub values: Vec<Vec<f64>>,
}

impl EvaluationMatrix {
    pub fn new(
        algorithms: Vec<String>,
        parameters: Vec<ParameterSpec>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let em = EvaluationMatrix {
            algorithms,
            parameters,
            values,
        };
        em.validate()?;
        Ok(em)
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::EmptyAlternatives);
        }
        if self.parameters.is_empty() {
            return Err(Error::EmptyAttributes);
        }
        if self.values.len() != self.algorithms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} value rows for {} algorithms",
                self.values.len(),
                self.algorithms.len()
            )));
        }
        for (row, r) in self.values.iter().enumerate() {
            if r.len() != self.parameters.len() {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} values for {} parameters",
                    row,
                    r.len(),
                    self.parameters.len()
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
        Ok(())
    }
}

/// How measured values are normalized before the band mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationMode {
    /// Divide every column by its maximum regardless of direction; the
    /// direction is consumed by the band mapping instead. This is the mode
    /// that reproduces the published reference tables.
    #[default]
    MaxRatio,
    /// Literal cost-reciprocal variant: benefit columns divide by the
    /// column max, cost columns compute min / value.
    StrictCostReciprocal,
}

/// Full output of the criticality pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub evaluation: EvaluationMatrix,
    pub normalized: Vec<Vec<f64>>,
    pub criticality: Vec<Vec<u8>>,
    pub weights: WeightVector,
    pub scale_divisor: u8,
    pub indices: Vec<f64>,
    pub recommended: Vec<String>,
}

/// Normalize the evaluation matrix to (0, 1] column-wise.
pub fn normalize_evaluation(em: &EvaluationMatrix, mode: NormalizationMode) -> Result<Vec<Vec<f64>>> {
    em.validate()?;
    let n = em.algorithms.len();
    let k = em.parameters.len();
    let mut out = vec![vec![0.0; k]; n];
    for j in 0..k {
        let max = (0..n).map(|i| em.values[i][j]).fold(f64::NEG_INFINITY, f64::max);
        let min = (0..n).map(|i| em.values[i][j]).fold(f64::INFINITY, f64::min);
        if max <= 0.0 {
            return Err(Error::ZeroColumnMax { col: j });
        }
        for i in 0..n {
            out[i][j] = match (mode, em.parameters[j].direction) {
                (NormalizationMode::MaxRatio, _)
                | (NormalizationMode::StrictCostReciprocal, Direction::Benefit) => {
                    em.values[i][j] / max
                }
                (NormalizationMode::StrictCostReciprocal, Direction::Cost) => {
                    if em.values[i][j] == 0.0 {
                        return Err(Error::ZeroCostValue { row: i, col: j });
                    }
                    min / em.values[i][j]
                }
            };
        }
    }
    Ok(out)
}

/// Map a normalized value onto the discrete criticality scale {1,3,5,7,9}.
///
/// For cost parameters a value near the column maximum is least critical
/// (level 1) and a value at or below 20% of it is most critical (level 9);
/// benefit parameters use the reversed level sequence. Every band boundary
/// is strict.
pub fn criticality_level(d: f64, direction: Direction) -> Result<u8> {
    if !d.is_finite() || d <= 0.0 || d > 1.0 {
        return Err(Error::ValueOutOfBand(d));
    }
    let band = if d > 0.8 {
        0
    } else if d > 0.6 {
        1
    } else if d > 0.4 {
        2
    } else if d > 0.2 {
        3
    } else {
        4
    };
    let levels: [u8; 5] = match direction {
        Direction::Cost => [1, 3, 5, 7, 9],
        Direction::Benefit => [9, 7, 5, 3, 1],
    };
    Ok(levels[band])
}

/// Elementwise band mapping over the normalized evaluation matrix.
pub fn criticality_matrix(em: &EvaluationMatrix, mode: NormalizationMode) -> Result<Vec<Vec<u8>>> {
    let normalized = normalize_evaluation(em, mode)?;
    normalized
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &d)| criticality_level(d, em.parameters[j].direction))
                .collect()
        })
        .collect()
}

/// Weighted, scaled criticality index per algorithm.
///
/// The scale divisor is the maximum criticality level observed anywhere in
/// the grid; `CI_i = 100 * (sum_j w_j * c_ij) / n`.
pub fn criticality_index(criticality: &[Vec<u8>], w: &WeightVector) -> Result<(Vec<f64>, u8)> {
    if criticality.is_empty() {
        return Err(Error::EmptyAlternatives);
    }
    for row in criticality {
        if row.len() != w.len() {
            return Err(Error::DimensionMismatch(format!(
                "criticality row has {} levels for {} weights",
                row.len(),
                w.len()
            )));
        }
    }
    let n = *criticality.iter().flatten().max().expect("non-empty grid");
    let indices = criticality
        .iter()
        .map(|row| {
            let weighted: f64 = row.iter().enumerate().map(|(j, &c)| w[j] * c as f64).sum();
            100.0 * weighted / n as f64
        })
        .collect();
    Ok((indices, n))
}

/// The full pipeline: derive parameter weights from judgments, normalize,
/// band-map, score and recommend. Co-leaders are all reported.
pub fn evaluate(
    em: &EvaluationMatrix,
    judgments: &PairwiseComparisonMatrix,
    mode: NormalizationMode,
) -> Result<CriticalityReport> {
    em.validate()?;
    let em_labels: Vec<String> = em.parameters.iter().map(|p| p.name.clone()).collect();
    if em_labels != judgments.labels {
        return Err(Error::LabelMismatch {
            em: em_labels,
            pcm: judgments.labels.clone(),
        });
    }
    let weights = ahp_weights(judgments)?;
    let normalized = normalize_evaluation(em, mode)?;
    let criticality = criticality_matrix(em, mode)?;
    let (indices, scale_divisor) = criticality_index(&criticality, &weights)?;
    let max = indices.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let recommended = em
        .algorithms
        .iter()
        .zip(&indices)
        .filter(|(_, &ci)| ci == max)
        .map(|(name, _)| name.clone())
        .collect();
    Ok(CriticalityReport {
        evaluation: em.clone(),
        normalized,
        criticality,
        weights,
        scale_divisor,
        indices,
        recommended,
    })
}
