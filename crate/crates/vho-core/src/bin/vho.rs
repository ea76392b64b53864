//! Command-line surface: simulate handover decisions, evaluate decision
//! methods with the criticality pipeline, reproduce the bundled reference
//! tables, and emit the default configuration.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vho_core::ahp::ahp_weights;
use vho_core::config::{
    default_config, default_parameter_judgments, load_config, OutputFormat, RunConfig,
    TrafficClass, PARAM_HANDOFF_RATE, PARAM_RANKING_ABNORMALITY,
};
use vho_core::decision::{Direction, GraConfig};
use vho_core::evaluator::{evaluate, EvaluationMatrix, NormalizationMode, ParameterSpec};
use vho_core::fixtures::{bundled_fixtures, EvaluationFixture};
use vho_core::report::{
    config_hash, hex_digest, EvaluationArtifact, ReproduceArtifact, ReproduceResult,
    SimulationArtifact, SCHEMA_VERSION, TOOL_VERSION,
};
use vho_core::simulator::{
    derive_run_seed, run_episode_with, summarize_metrics, AbnormalityRule, EpisodeOptions,
};

#[derive(Parser)]
#[command(name = "vho", version, about = "Wireless network selection decision engine and evaluation harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run repeated handover-selection episodes and report the measured
    /// abnormality and handoff percentages per method.
    Simulate {
        /// Config file; defaults are used when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Traffic class (selects default judgments when no config is given,
        /// overrides the config's class otherwise).
        #[arg(long)]
        traffic_class: Option<TrafficClass>,
        /// Abnormality detection rule.
        #[arg(long)]
        abnormality: Option<AbnormalityRule>,
        #[arg(long)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score decision methods with the criticality pipeline, from a
    /// simulation artifact or a fixture file.
    Evaluate {
        /// JSON simulation artifact produced by `simulate --format json`.
        #[arg(long, conflicts_with = "fixture")]
        metrics: Option<PathBuf>,
        /// TOML evaluation fixture (measured values plus judgments).
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Config supplying parameter judgments for `--metrics` input.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Use the reciprocal cost normalization instead of the max-ratio
        /// default.
        #[arg(long = "strict-eq3")]
        strict_eq3: bool,
        #[arg(long)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the four bundled reference evaluations and check every
    /// criticality cell and index against the expected tables.
    Reproduce {
        #[arg(long)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the default configuration for a traffic class.
    EmitDefaults {
        #[arg(long, default_value = "background")]
        traffic_class: TrafficClass,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Simulate {
            config,
            seed,
            traffic_class,
            abnormality,
            format,
            out,
        } => cmd_simulate(config, seed, traffic_class, abnormality, format, out),
        Command::Evaluate {
            metrics,
            fixture,
            config,
            strict_eq3,
            format,
            out,
        } => cmd_evaluate(metrics, fixture, config, strict_eq3, format, out),
        Command::Reproduce { format, out } => cmd_reproduce(format, out),
        Command::EmitDefaults { traffic_class, out } => {
            write_output(&default_config(traffic_class).to_toml(), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn resolve_config(
    path: Option<&Path>,
    traffic_class: Option<TrafficClass>,
) -> Result<RunConfig, String> {
    let mut cfg = match path {
        Some(p) => {
            let (cfg, warnings) = load_config(p).map_err(|e| format!("{e:#}"))?;
            for w in warnings {
                eprintln!("{w}");
            }
            cfg
        }
        None => default_config(traffic_class.unwrap_or(TrafficClass::Background)),
    };
    if let (Some(class), Some(_)) = (traffic_class, path) {
        cfg.traffic_class = class;
        cfg.parameter_judgments = default_parameter_judgments(class);
    }
    Ok(cfg)
}

fn cmd_simulate(
    config: Option<PathBuf>,
    seed: Option<u64>,
    traffic_class: Option<TrafficClass>,
    abnormality: Option<AbnormalityRule>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let mut cfg = resolve_config(config.as_deref(), traffic_class)?;
    if let Some(seed) = seed {
        cfg.scenario.seed = seed;
    }
    if let Some(rule) = abnormality {
        cfg.abnormality_rule = rule;
    }
    cfg.validate().map_err(|e| format!("{e:#}"))?;

    let weights = ahp_weights(&cfg.attribute_judgments).map_err(|e| e.to_string())?;
    let opts = EpisodeOptions {
        rule: cfg.abnormality_rule,
        gra: GraConfig { xi: cfg.gra_xi },
    };

    let mut artifact = SimulationArtifact {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        config_hash: config_hash(&cfg),
        seed: cfg.scenario.seed,
        traffic_class: cfg.traffic_class,
        abnormality_rule: cfg.abnormality_rule,
        epochs: cfg.scenario.epochs,
        runs: cfg.runs,
        means: Vec::new(),
        episodes: Vec::new(),
    };
    for &method in &cfg.methods {
        let mut episodes = Vec::with_capacity(cfg.runs as usize);
        for run in 0..cfg.runs {
            let run_seed = derive_run_seed(cfg.scenario.seed, run);
            let mut scenario = cfg.scenario.clone();
            scenario.seed = run_seed;
            let metrics = run_episode_with(&scenario, method, &weights, opts)
                .map_err(|e| e.to_string())?;
            artifact.record_episode(run, run_seed, &metrics);
            episodes.push(metrics);
        }
        artifact
            .means
            .push(summarize_metrics(&episodes).map_err(|e| e.to_string())?);
    }

    let format = format.unwrap_or(cfg.output.format);
    let out = out.or(cfg.output.path);
    write_output(&artifact.emit(format), out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_evaluate(
    metrics: Option<PathBuf>,
    fixture: Option<PathBuf>,
    config: Option<PathBuf>,
    strict_eq3: bool,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let mode = if strict_eq3 {
        NormalizationMode::StrictCostReciprocal
    } else {
        NormalizationMode::MaxRatio
    };
    let (em, judgments, source, input_hash) = match (&metrics, &fixture) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read '{}': {e}", path.display()))?;
            let artifact: SimulationArtifact = serde_json::from_str(&text)
                .map_err(|e| format!("malformed metrics artifact '{}': {e}", path.display()))?;
            let em = EvaluationMatrix::new(
                artifact.means.iter().map(|m| m.method.name().to_string()).collect(),
                vec![
                    ParameterSpec {
                        name: PARAM_RANKING_ABNORMALITY.to_string(),
                        direction: Direction::Cost,
                    },
                    ParameterSpec {
                        name: PARAM_HANDOFF_RATE.to_string(),
                        direction: Direction::Cost,
                    },
                ],
                artifact
                    .means
                    .iter()
                    .map(|m| vec![m.abnormality_pct, m.handoff_pct])
                    .collect(),
            )
            .map_err(|e| e.to_string())?;
            let judgments = match &config {
                Some(p) => {
                    let (cfg, _) = load_config(p).map_err(|e| format!("{e:#}"))?;
                    cfg.parameter_judgments
                }
                None => default_parameter_judgments(artifact.traffic_class),
            };
            (
                em,
                judgments,
                format!("metrics:{}", path.display()),
                hex_digest(text.as_bytes()),
            )
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read '{}': {e}", path.display()))?;
            let f = EvaluationFixture::from_toml(&text).map_err(|e| format!("{e:#}"))?;
            let em = f.evaluation_matrix().map_err(|e| e.to_string())?;
            (
                em,
                f.judgment_matrix(),
                format!("fixture:{}", path.display()),
                hex_digest(text.as_bytes()),
            )
        }
        _ => return Err("exactly one of --metrics or --fixture is required".to_string()),
    };

    let report = evaluate(&em, &judgments, mode).map_err(|e| e.to_string())?;
    let artifact = EvaluationArtifact {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        source,
        input_hash,
        report,
    };
    write_output(&artifact.emit(format.unwrap_or_default()), out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_reproduce(format: Option<OutputFormat>, out: Option<PathBuf>) -> Result<ExitCode, String> {
    let mut results = Vec::new();
    for (class, text) in bundled_fixtures() {
        let fixture = EvaluationFixture::from_toml(text).map_err(|e| format!("{e:#}"))?;
        let em = fixture.evaluation_matrix().map_err(|e| e.to_string())?;
        let report = evaluate(&em, &fixture.judgment_matrix(), NormalizationMode::MaxRatio)
            .map_err(|e| e.to_string())?;
        let mismatches = fixture.mismatches(&report);
        results.push(ReproduceResult {
            traffic_class: class,
            pass: mismatches.is_empty(),
            mismatches,
            report,
        });
    }
    let artifact = ReproduceArtifact {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        all_pass: results.iter().all(|r| r.pass),
        results,
    };
    write_output(&artifact.emit(format.unwrap_or_default()), out.as_deref())?;
    Ok(if artifact.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write '{}': {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
