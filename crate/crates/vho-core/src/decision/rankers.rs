//! The three ranking methods: TOPSIS, GRA and DIA.

use crate::error::{Error, Result};

use super::{normalize_minmax, DecisionMatrix, Direction, Method, Ranking, WeightVector};

/// GRA tuning; `xi` is the distinguishing coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraConfig {
    pub xi: f64,
}

impl Default for GraConfig {
    fn default() -> Self {
        GraConfig { xi: 0.5 }
    }
}

fn check_inputs(m: &DecisionMatrix, w: &WeightVector) -> Result<()> {
    m.validate()?;
    if w.len() != m.n_attributes() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} attributes",
            w.len(),
            m.n_attributes()
        )));
    }
    Ok(())
}

/// Rank by relative closeness to the positive ideal solution.
///
/// Columns are vector-normalized (divided by their Euclidean norm) and
/// weighted. The score is `C_i = D-_i / (D+_i + D-_i)`, descending.
pub fn rank_topsis(m: &DecisionMatrix, w: &WeightVector) -> Result<Ranking> {
    check_inputs(m, w)?;
    let n = m.n_alternatives();
    let k = m.n_attributes();

    let mut weighted = vec![vec![0.0; k]; n];
    for j in 0..k {
        let norm: f64 = m
            .values
            .iter()
            .map(|row| row[j] * row[j])
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroColumn {
                col: j,
                name: m.attributes[j].name.clone(),
            });
        }
        for i in 0..n {
            weighted[i][j] = w[j] * m.values[i][j] / norm;
        }
    }

    let mut ideal = vec![0.0; k];
    let mut anti = vec![0.0; k];
    for j in 0..k {
        let col = || weighted.iter().map(move |row| row[j]);
        let max = col().fold(f64::NEG_INFINITY, f64::max);
        let min = col().fold(f64::INFINITY, f64::min);
        match m.attributes[j].direction {
            Direction::Benefit => {
                ideal[j] = max;
                anti[j] = min;
            }
            Direction::Cost => {
                ideal[j] = min;
                anti[j] = max;
            }
        }
    }

    let scores: Vec<f64> = weighted
        .iter()
        .map(|row| {
            let d_pos = euclidean(row, &ideal);
            let d_neg = euclidean(row, &anti);
            if d_pos + d_neg == 0.0 {
                // every alternative coincides with both ideals: full tie
                0.5
            } else {
                d_neg / (d_pos + d_neg)
            }
        })
        .collect();
    finite(&scores)?;
    Ok(Ranking::from_scores(Method::Topsis, scores, false))
}

/// Rank by grey relational grade against the all-1 ideal reference series.
pub fn rank_gra(m: &DecisionMatrix, w: &WeightVector) -> Result<Ranking> {
    rank_gra_with(m, w, GraConfig::default())
}

pub fn rank_gra_with(m: &DecisionMatrix, w: &WeightVector, cfg: GraConfig) -> Result<Ranking> {
    check_inputs(m, w)?;
    let normalized = normalize_minmax(m)?;
    let deltas: Vec<Vec<f64>> = normalized
        .iter()
        .map(|row| row.iter().map(|r| (1.0 - r).abs()).collect())
        .collect();
    let d_min = deltas
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let d_max = deltas
        .iter()
        .flatten()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);

    let scores: Vec<f64> = deltas
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &d)| {
                    let gamma = if d_max == 0.0 {
                        // whole grid sits on the reference series
                        1.0
                    } else {
                        (d_min + cfg.xi * d_max) / (d + cfg.xi * d_max)
                    };
                    w[j] * gamma
                })
                .sum()
        })
        .collect();
    finite(&scores)?;
    Ok(Ranking::from_scores(Method::Gra, scores, false))
}

/// Rank by Euclidean distance to the positive ideal alternative on the
/// weighted min-max normalized grid; smallest distance wins.
pub fn rank_dia(m: &DecisionMatrix, w: &WeightVector) -> Result<Ranking> {
    check_inputs(m, w)?;
    let normalized = normalize_minmax(m)?;
    let k = m.n_attributes();
    let weighted: Vec<Vec<f64>> = normalized
        .iter()
        .map(|row| (0..k).map(|j| w[j] * row[j]).collect())
        .collect();
    let pia: Vec<f64> = (0..k)
        .map(|j| {
            weighted
                .iter()
                .map(|row| row[j])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let scores: Vec<f64> = weighted.iter().map(|row| euclidean(row, &pia)).collect();
    finite(&scores)?;
    Ok(Ranking::from_scores(Method::Dia, scores, true))
}

/// Dispatch on the method enum.
pub fn rank(method: Method, m: &DecisionMatrix, w: &WeightVector) -> Result<Ranking> {
    match method {
        Method::Topsis => rank_topsis(m, w),
        Method::Gra => rank_gra(m, w),
        Method::Dia => rank_dia(m, w),
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn finite(scores: &[f64]) -> Result<()> {
    match scores.iter().position(|s| !s.is_finite()) {
        Some(row) => Err(Error::NonFiniteValue { row, col: 0 }),
        None => Ok(()),
    }
}
