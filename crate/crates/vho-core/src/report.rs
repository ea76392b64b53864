//! Result artifacts and their table / CSV / JSON emitters.
//!
//! Every artifact embeds a schema version, the tool version, the config
//! hash and the seed, so re-running with identical inputs reproduces
//! identical bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{OutputFormat, RunConfig, TrafficClass};
use crate::decision::Method;
use crate::evaluator::CriticalityReport;
use crate::simulator::{AbnormalityRule, EpisodeMetrics, MeanMetrics};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the config's canonical JSON form.
pub fn config_hash(config: &RunConfig) -> String {
    let canonical = serde_json::to_vec(config).expect("config serializes");
    hex_digest(&canonical)
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// One episode's metrics within a simulation artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub method: Method,
    pub run: u32,
    pub run_seed: u64,
    pub abnormality_pct: f64,
    pub handoff_pct: f64,
}

/// Output of `simulate`: per-method means plus per-run detail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationArtifact {
    pub schema_version: u32,
    pub tool_version: String,
    pub config_hash: String,
    pub seed: u64,
    pub traffic_class: TrafficClass,
    pub abnormality_rule: AbnormalityRule,
    pub epochs: u32,
    pub runs: u32,
    pub means: Vec<MeanMetrics>,
    pub episodes: Vec<EpisodeRecord>,
}

impl SimulationArtifact {
    pub fn record_episode(&mut self, run: u32, run_seed: u64, m: &EpisodeMetrics) {
        self.episodes.push(EpisodeRecord {
            method: m.method,
            run,
            run_seed,
            abnormality_pct: m.abnormality_pct,
            handoff_pct: m.handoff_pct,
        });
    }

    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Table => self.to_table(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("kind,method,run,run_seed,abnormality_pct,handoff_pct\n");
        for m in &self.means {
            out.push_str(&format!(
                "mean,{},,,{},{}\n",
                m.method, m.abnormality_pct, m.handoff_pct
            ));
        }
        for e in &self.episodes {
            out.push_str(&format!(
                "run,{},{},{},{},{}\n",
                e.method, e.run, e.run_seed, e.abnormality_pct, e.handoff_pct
            ));
        }
        out
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "simulation: traffic class {}, {} runs x {} epochs, seed {}\n",
            self.traffic_class, self.runs, self.epochs, self.seed
        ));
        out.push_str(&format!(
            "tool {} | config {}\n\n",
            self.tool_version,
            &self.config_hash[..12]
        ));
        out.push_str("method   abnormality_pct  handoff_pct  (means)\n");
        for m in &self.means {
            out.push_str(&format!(
                "{:<8} {:>15.2} {:>12.2}\n",
                m.method.name(),
                m.abnormality_pct,
                m.handoff_pct
            ));
        }
        out.push_str("\nmethod   run  abnormality_pct  handoff_pct\n");
        for e in &self.episodes {
            out.push_str(&format!(
                "{:<8} {:>3} {:>16.2} {:>12.2}\n",
                e.method.name(),
                e.run,
                e.abnormality_pct,
                e.handoff_pct
            ));
        }
        out
    }
}

/// Output of `evaluate`: the full criticality report plus provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationArtifact {
    pub schema_version: u32,
    pub tool_version: String,
    pub source: String,
    pub input_hash: String,
    pub report: CriticalityReport,
}

impl EvaluationArtifact {
    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Table => self.to_table(),
        }
    }

    fn to_csv(&self) -> String {
        let r = &self.report;
        let mut header = String::from("algorithm");
        for p in &r.evaluation.parameters {
            header.push_str(&format!(",{}", p.name));
        }
        for p in &r.evaluation.parameters {
            header.push_str(&format!(",criticality_{}", p.name));
        }
        header.push_str(",criticality_index,recommended\n");
        let mut out = header;
        for (i, alg) in r.evaluation.algorithms.iter().enumerate() {
            out.push_str(alg);
            for v in &r.evaluation.values[i] {
                out.push_str(&format!(",{v}"));
            }
            for c in &r.criticality[i] {
                out.push_str(&format!(",{c}"));
            }
            out.push_str(&format!(
                ",{},{}\n",
                r.indices[i],
                r.recommended.contains(alg)
            ));
        }
        out
    }

    fn to_table(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        out.push_str(&format!(
            "evaluation: {} | tool {} | input {}\n\n",
            self.source,
            self.tool_version,
            &self.input_hash[..12]
        ));
        out.push_str("weights:");
        for (p, w) in r.evaluation.parameters.iter().zip(r.weights.as_slice()) {
            out.push_str(&format!("  {} = {:.3}", p.name, w));
        }
        out.push_str(&format!("\nscale divisor: {}\n\n", r.scale_divisor));
        out.push_str("algorithm");
        for p in &r.evaluation.parameters {
            out.push_str(&format!("  {}(v/d/c)", p.name));
        }
        out.push_str("  criticality_index\n");
        for (i, alg) in r.evaluation.algorithms.iter().enumerate() {
            out.push_str(&format!("{alg:<9}"));
            for j in 0..r.evaluation.parameters.len() {
                out.push_str(&format!(
                    "  {:.1}/{:.3}/{}",
                    r.evaluation.values[i][j], r.normalized[i][j], r.criticality[i][j]
                ));
            }
            out.push_str(&format!("  {:>17.2}\n", r.indices[i]));
        }
        out.push_str(&format!("\nrecommended: {}\n", r.recommended.join(", ")));
        out
    }
}

/// One traffic class's reproduction outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproduceResult {
    pub traffic_class: TrafficClass,
    pub pass: bool,
    pub mismatches: Vec<String>,
    pub report: CriticalityReport,
}

/// Output of `reproduce`: four reports with pass flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproduceArtifact {
    pub schema_version: u32,
    pub tool_version: String,
    pub all_pass: bool,
    pub results: Vec<ReproduceResult>,
}

impl ReproduceArtifact {
    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Table => self.to_table(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("traffic_class,algorithm,criticality_index,pass\n");
        for r in &self.results {
            for (alg, ci) in r.report.evaluation.algorithms.iter().zip(&r.report.indices) {
                out.push_str(&format!("{},{},{},{}\n", r.traffic_class, alg, ci, r.pass));
            }
        }
        out
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let cis: Vec<String> = r
                .report
                .evaluation
                .algorithms
                .iter()
                .zip(&r.report.indices)
                .map(|(a, ci)| format!("{a}={ci:.2}"))
                .collect();
            out.push_str(&format!(
                "{status}  {:<15} {}\n",
                r.traffic_class.to_string(),
                cis.join("  ")
            ));
            for m in &r.mismatches {
                out.push_str(&format!("      {m}\n"));
            }
        }
        out.push_str(if self.all_pass {
            "all reference tables reproduced\n"
        } else {
            "reproduction FAILED\n"
        });
        out
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::default_config;

    #[test]
    fn config_hash_is_stable_and_input_sensitive() {
        let a = default_config(TrafficClass::Background);
        let b = default_config(TrafficClass::Background);
        assert_eq!(config_hash(&a), config_hash(&b));
        let c = default_config(TrafficClass::Streaming);
        assert_ne!(config_hash(&a), config_hash(&c));
    }

    #[test]
    fn simulation_csv_has_mean_and_run_rows() {
        let artifact = SimulationArtifact {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            config_hash: "0".repeat(64),
            seed: 1,
            traffic_class: TrafficClass::Background,
            abnormality_rule: AbnormalityRule::Order,
            epochs: 10,
            runs: 1,
            means: vec![MeanMetrics {
                method: Method::Gra,
                abnormality_pct: 12.5,
                handoff_pct: 37.5,
                runs: 1,
            }],
            episodes: vec![EpisodeRecord {
                method: Method::Gra,
                run: 0,
                run_seed: 99,
                abnormality_pct: 12.5,
                handoff_pct: 37.5,
            }],
        };
        let csv = artifact.emit(OutputFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "kind,method,run,run_seed,abnormality_pct,handoff_pct");
        assert_eq!(lines[1], "mean,GRA,,,12.5,37.5");
        assert_eq!(lines[2], "run,GRA,0,99,12.5,37.5");
    }
}
