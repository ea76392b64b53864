//! Run configuration: the scenario, traffic class, judgment matrices and
//! output settings, loadable from a TOML file. Unknown keys are rejected.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ahp::{consistency_ratio, PairwiseComparisonMatrix, CONSISTENCY_WARN_THRESHOLD};
use crate::decision::{AttributeSpec, Direction, Method, ValueModel};
use crate::simulator::{AbnormalityRule, NetworkSpec, ScenarioSpec};

pub const PARAM_RANKING_ABNORMALITY: &str = "ranking_abnormality";
pub const PARAM_HANDOFF_RATE: &str = "handoff_rate";

/// The four 3GPP QoS traffic classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrafficClass {
    Background,
    Conversational,
    Interactive,
    Streaming,
}

impl TrafficClass {
    pub const ALL: [TrafficClass; 4] = [
        TrafficClass::Background,
        TrafficClass::Conversational,
        TrafficClass::Interactive,
        TrafficClass::Streaming,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TrafficClass::Background => "background",
            TrafficClass::Conversational => "conversational",
            TrafficClass::Interactive => "interactive",
            TrafficClass::Streaming => "streaming",
        }
    }
}

impl fmt::Display for TrafficClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TrafficClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "background" => Ok(TrafficClass::Background),
            "conversational" => Ok(TrafficClass::Conversational),
            "interactive" => Ok(TrafficClass::Interactive),
            "streaming" => Ok(TrafficClass::Streaming),
            other => Err(format!("unknown traffic class '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config '{path}': {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config '{path}': {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: Box<toml::de::Error>,
    },
    #[error("methods must be non-empty")]
    NoMethods,
    #[error("runs must be at least 1")]
    NoRuns,
    #[error("attribute judgments cover {labels:?} but the scenario defines {attrs:?}")]
    AttributeLabelMismatch {
        labels: Vec<String>,
        attrs: Vec<String>,
    },
    #[error("parameter judgments must cover [{PARAM_RANKING_ABNORMALITY}, {PARAM_HANDOFF_RATE}], got {0:?}")]
    ParameterLabelMismatch(Vec<String>),
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

/// Everything a simulate-then-evaluate run needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub traffic_class: TrafficClass,
    pub methods: Vec<Method>,
    pub runs: u32,
    #[serde(default)]
    pub abnormality_rule: AbnormalityRule,
    #[serde(default = "default_gra_xi")]
    pub gra_xi: f64,
    #[serde(default)]
    pub output: OutputSpec,
    pub scenario: ScenarioSpec,
    pub attribute_judgments: PairwiseComparisonMatrix,
    pub parameter_judgments: PairwiseComparisonMatrix,
}

fn default_gra_xi() -> f64 {
    0.5
}

impl RunConfig {
    /// Validate all invariants; returns human-readable warnings (currently
    /// only high consistency ratios, which do not block a run).
    pub fn validate(&self) -> Result<Vec<String>, ConfigError> {
        if self.methods.is_empty() {
            return Err(ConfigError::NoMethods);
        }
        if self.runs == 0 {
            return Err(ConfigError::NoRuns);
        }
        self.scenario.validate()?;
        self.attribute_judgments.validate()?;
        self.parameter_judgments.validate()?;
        let attrs: Vec<String> = self
            .scenario
            .attribute_template()
            .iter()
            .map(|a| a.name.clone())
            .collect();
        if self.attribute_judgments.labels != attrs {
            return Err(ConfigError::AttributeLabelMismatch {
                labels: self.attribute_judgments.labels.clone(),
                attrs,
            });
        }
        let expected = [
            PARAM_RANKING_ABNORMALITY.to_string(),
            PARAM_HANDOFF_RATE.to_string(),
        ];
        if self.parameter_judgments.labels != expected {
            return Err(ConfigError::ParameterLabelMismatch(
                self.parameter_judgments.labels.clone(),
            ));
        }
        let mut warnings = Vec::new();
        for (name, pcm) in [
            ("attribute_judgments", &self.attribute_judgments),
            ("parameter_judgments", &self.parameter_judgments),
        ] {
            let cr = consistency_ratio(pcm)?;
            if cr > CONSISTENCY_WARN_THRESHOLD {
                warnings.push(format!(
                    "warning: {name} consistency ratio {cr:.3} exceeds {CONSISTENCY_WARN_THRESHOLD}"
                ));
            }
        }
        Ok(warnings)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}

/// Load and validate a config file. Returns the config and any warnings.
pub fn load_config(path: &Path) -> Result<(RunConfig, Vec<String>), ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let config: RunConfig = toml::from_str(&text).map_err(|source| ConfigError::Parse {
        path: path.to_path_buf(),
        source: Box::new(source),
    })?;
    let warnings = config.validate()?;
    Ok((config, warnings))
}

fn attr(name: &str, units: &str, direction: Direction, vm: ValueModel) -> AttributeSpec {
    AttributeSpec {
        name: name.to_string(),
        units: units.to_string(),
        direction,
        value_model: vm,
    }
}

/// The default heterogeneous scenario: two cellular networks, two WLANs and
/// two WiMAX networks, with per-network attribute ranges.
pub fn default_scenario(seed: u64, epochs: u32) -> ScenarioSpec {
    use Direction::{Benefit, Cost};
    use ValueModel::{Fixed, UniformRange};
    let network = |name: &str, cb: f64, s: f64, ab: (f64, f64), d: (f64, f64), j: (f64, f64)| {
        NetworkSpec {
            name: name.to_string(),
            attributes: vec![
                attr("CB", "%", Cost, Fixed(cb)),
                attr("S", "%", Benefit, Fixed(s)),
                attr("AB", "mbps", Benefit, UniformRange(ab.0, ab.1)),
                attr("D", "ms", Cost, UniformRange(d.0, d.1)),
                attr("J", "ms", Cost, UniformRange(j.0, j.1)),
                attr("L", "per-10^6", Cost, UniformRange(20.0, 80.0)),
            ],
        }
    };
    ScenarioSpec {
        networks: vec![
            network("UMTS1", 60.0, 70.0, (0.1, 2.0), (25.0, 50.0), (5.0, 10.0)),
            network("UMTS2", 80.0, 90.0, (0.1, 2.0), (25.0, 50.0), (5.0, 10.0)),
            network("WLAN1", 10.0, 50.0, (1.0, 11.0), (100.0, 150.0), (10.0, 20.0)),
            network("WLAN2", 5.0, 50.0, (1.0, 11.0), (100.0, 150.0), (10.0, 20.0)),
            network("WIMAX1", 50.0, 60.0, (1.0, 60.0), (60.0, 100.0), (3.0, 10.0)),
            network("WIMAX2", 40.0, 60.0, (1.0, 60.0), (60.0, 100.0), (3.0, 10.0)),
        ],
        epochs,
        seed,
    }
}

/// Per-class judgment matrix over the two evaluation parameters; the
/// handoff rate grows in importance from background up to streaming.
pub fn default_parameter_judgments(class: TrafficClass) -> PairwiseComparisonMatrix {
    let handoff_importance = match class {
        TrafficClass::Background => 1.0,
        TrafficClass::Conversational => 3.0,
        TrafficClass::Interactive => 5.0,
        TrafficClass::Streaming => 7.0,
    };
    PairwiseComparisonMatrix {
        labels: vec![
            PARAM_RANKING_ABNORMALITY.to_string(),
            PARAM_HANDOFF_RATE.to_string(),
        ],
        judgments: vec![
            vec![1.0, 1.0 / handoff_importance],
            vec![handoff_importance, 1.0],
        ],
    }
}

/// Per-class judgment matrix over the six network attributes.
///
/// These defaults are implementer-chosen (the evaluation study this tool
/// reproduces does not publish per-class attribute judgments): each class
/// gets a priority profile and the matrix is built consistently from the
/// priority ratios, so its consistency ratio is 0.
pub fn default_attribute_judgments(class: TrafficClass) -> PairwiseComparisonMatrix {
    // priorities over CB, S, AB, D, J, L
    let priorities: [f64; 6] = match class {
        TrafficClass::Background => [2.0, 1.0, 4.0, 1.0, 1.0, 3.0],
        TrafficClass::Conversational => [1.0, 1.0, 2.0, 4.0, 4.0, 2.0],
        TrafficClass::Interactive => [1.0, 2.0, 2.0, 4.0, 2.0, 3.0],
        TrafficClass::Streaming => [1.0, 1.0, 4.0, 2.0, 4.0, 2.0],
    };
    let labels = ["CB", "S", "AB", "D", "J", "L"];
    PairwiseComparisonMatrix {
        labels: labels.iter().map(|s| s.to_string()).collect(),
        judgments: (0..6)
            .map(|i| (0..6).map(|j| priorities[i] / priorities[j]).collect())
            .collect(),
    }
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_EPOCHS: u32 = 1000;
pub const DEFAULT_RUNS: u32 = 10;

/// Fully populated default config for one traffic class.
pub fn default_config(class: TrafficClass) -> RunConfig {
    RunConfig {
        traffic_class: class,
        methods: Method::ALL.to_vec(),
        runs: DEFAULT_RUNS,
        abnormality_rule: AbnormalityRule::Order,
        gra_xi: 0.5,
        output: OutputSpec::default(),
        scenario: default_scenario(DEFAULT_SEED, DEFAULT_EPOCHS),
        attribute_judgments: default_attribute_judgments(class),
        parameter_judgments: default_parameter_judgments(class),
    }
}
