//! Pairwise-comparison weighting (analytic hierarchy process).

use serde::{Deserialize, Serialize};

use crate::decision::WeightVector;
use crate::error::{Error, Result};

const RECIPROCITY_TOL: f64 = 1e-9;
const SCALE_MIN: f64 = 1.0 / 9.0 - 1e-9;
const SCALE_MAX: f64 = 9.0 + 1e-9;

/// Square reciprocal matrix of importance judgments on the 1/9..9 scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairwiseComparisonMatrix {
    pub labels: Vec<String>,
    pub judgments: Vec<Vec<f64>>,
}

impl PairwiseComparisonMatrix {
    pub fn new(labels: Vec<String>, judgments: Vec<Vec<f64>>) -> Result<Self> {
        let p = PairwiseComparisonMatrix { labels, judgments };
        p.validate()?;
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.labels.len();
        if self.judgments.len() != k || self.judgments.iter().any(|r| r.len() != k) {
            return Err(Error::NotSquare {
                rows: self.judgments.len(),
                cols: self.judgments.first().map_or(0, |r| r.len()),
            });
        }
        for i in 0..k {
            if self.judgments[i][i] != 1.0 {
                return Err(Error::DiagonalNotOne(i));
            }
            for j in 0..k {
                let a = self.judgments[i][j];
                if !a.is_finite() || a <= 0.0 {
                    return Err(Error::NonPositiveJudgment { i, j, value: a });
                }
                if !(SCALE_MIN..=SCALE_MAX).contains(&a) {
                    return Err(Error::JudgmentOutOfScale { i, j, value: a });
                }
                let b = self.judgments[j][i];
                if (a * b - 1.0).abs() > RECIPROCITY_TOL {
                    return Err(Error::ReciprocityViolation { i, j, a, b });
                }
            }
        }
        Ok(())
    }
}

/// Derive weights as row geometric means normalized to sum 1.
///
/// This is the geometric-mean approximation to the principal eigenvector;
/// it is exact for consistent matrices and for order 2.
pub fn ahp_weights(p: &PairwiseComparisonMatrix) -> Result<WeightVector> {
    p.validate()?;
    let k = p.order();
    let means: Vec<f64> = p
        .judgments
        .iter()
        .map(|row| row.iter().map(|v| v.ln()).sum::<f64>() / k as f64)
        .map(f64::exp)
        .collect();
    WeightVector::normalized(&means)
}

/// Random consistency index per matrix order.
fn random_index(k: usize) -> Result<f64> {
    match k {
        1 | 2 => Ok(0.0),
        3 => Ok(0.58),
        4 => Ok(0.90),
        5 => Ok(1.12),
        6 => Ok(1.24),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// Consistency ratio `CR = ((lambda_max - k)/(k - 1)) / RI(k)`.
///
/// `lambda_max` is estimated as the mean over rows of `(A w)_i / w_i` with
/// the geometric-mean weights. Defined as 0 for k <= 2.
pub fn consistency_ratio(p: &PairwiseComparisonMatrix) -> Result<f64> {
    let k = p.order();
    if k <= 2 {
        p.validate()?;
        return Ok(0.0);
    }
    let w = ahp_weights(p)?;
    let lambda_max: f64 = (0..k)
        .map(|i| {
            let aw: f64 = (0..k).map(|j| p.judgments[i][j] * w[j]).sum();
            aw / w[i]
        })
        .sum::<f64>()
        / k as f64;
    let ci = (lambda_max - k as f64) / (k as f64 - 1.0);
    Ok(ci / random_index(k)?)
}

/// Threshold above which a judgment matrix is conventionally considered
/// too inconsistent; callers may warn but weighting still proceeds.
pub const CONSISTENCY_WARN_THRESHOLD: f64 = 0.1;
