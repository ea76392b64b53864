//! Bundled reference fixtures: measured evaluation metrics and judgment
//! matrices per traffic class, with the expected criticality matrix and
//! index column for reproduction checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ahp::PairwiseComparisonMatrix;
use crate::config::TrafficClass;
use crate::evaluator::{CriticalityReport, EvaluationMatrix, ParameterSpec};

pub const CI_TOLERANCE: f64 = 0.05;

/// One evaluation fixture plus its expected outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluationFixture {
    pub traffic_class: TrafficClass,
    pub algorithms: Vec<String>,
    pub parameters: Vec<ParameterSpec>,
    pub values: Vec<Vec<f64>>,
    pub judgments: Vec<Vec<f64>>,
    pub expected_criticality: Vec<Vec<u8>>,
    pub expected_indices: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot parse fixture: {0}")]
    Parse(#[from] Box<toml::de::Error>),
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

impl EvaluationFixture {
    pub fn from_toml(text: &str) -> Result<Self, FixtureError> {
        let f: EvaluationFixture = toml::from_str(text).map_err(Box::new)?;
        f.evaluation_matrix()?.validate()?;
        f.judgment_matrix().validate()?;
        Ok(f)
    }

    pub fn evaluation_matrix(&self) -> Result<EvaluationMatrix, crate::error::Error> {
        EvaluationMatrix::new(
            self.algorithms.clone(),
            self.parameters.clone(),
            self.values.clone(),
        )
    }

    pub fn judgment_matrix(&self) -> PairwiseComparisonMatrix {
        PairwiseComparisonMatrix {
            labels: self.parameters.iter().map(|p| p.name.clone()).collect(),
            judgments: self.judgments.clone(),
        }
    }

    /// Compare a produced report against the fixture's expectations.
    /// Returns one message per mismatching cell.
    pub fn mismatches(&self, report: &CriticalityReport) -> Vec<String> {
        let mut out = Vec::new();
        if report.criticality != self.expected_criticality {
            for (i, (got, want)) in report
                .criticality
                .iter()
                .zip(&self.expected_criticality)
                .enumerate()
            {
                for (j, (g, w)) in got.iter().zip(want).enumerate() {
                    if g != w {
                        out.push(format!(
                            "{}: criticality[{}][{}] ({} / {}) = {}, expected {}",
                            self.traffic_class,
                            i,
                            j,
                            self.algorithms[i],
                            self.parameters[j].name,
                            g,
                            w
                        ));
                    }
                }
            }
        }
        for (i, (got, want)) in report.indices.iter().zip(&self.expected_indices).enumerate() {
            if (got - want).abs() > CI_TOLERANCE {
                out.push(format!(
                    "{}: index[{}] ({}) = {:.4}, expected {:.2} +/- {}",
                    self.traffic_class, i, self.algorithms[i], got, want, CI_TOLERANCE
                ));
            }
        }
        out
    }
}

/// The four bundled fixtures, in traffic-class order.
pub fn bundled_fixtures() -> Vec<(TrafficClass, &'static str)> {
    vec![
        (
            TrafficClass::Background,
            include_str!("../fixtures/background.toml"),
        ),
        (
            TrafficClass::Conversational,
            include_str!("../fixtures/conversational.toml"),
        ),
        (
            TrafficClass::Interactive,
            include_str!("../fixtures/interactive.toml"),
        ),
        (
            TrafficClass::Streaming,
            include_str!("../fixtures/streaming.toml"),
        ),
    ]
}

pub fn load_bundled(class: TrafficClass) -> EvaluationFixture {
    let (_, text) = bundled_fixtures()
        .into_iter()
        .find(|(c, _)| *c == class)
        .expect("all classes bundled");
    EvaluationFixture::from_toml(text).expect("bundled fixtures are valid")
}
