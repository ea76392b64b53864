//! Repeated network-selection episodes over a randomized scenario, measuring
//! ranking abnormality and handoff rate per method.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decision::{
    rank, rank_gra_with, AttributeSpec, DecisionMatrix, GraConfig, Method, Ranking, WeightVector,
};
use crate::error::{Error, Result};

/// One candidate network and its per-attribute value models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub name: String,
    pub attributes: Vec<AttributeSpec>,
}

/// The randomized scenario: candidate networks, decision epochs, RNG seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub networks: Vec<NetworkSpec>,
    pub epochs: u32,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if self.networks.is_empty() {
            return Err(Error::EmptyAlternatives);
        }
        if self.epochs < 2 {
            return Err(Error::TooFewEpochs(self.epochs));
        }
        let reference = &self.networks[0].attributes;
        if reference.is_empty() {
            return Err(Error::EmptyAttributes);
        }
        for net in &self.networks {
            if net.attributes.len() != reference.len() {
                return Err(Error::AttributeListMismatch(format!(
                    "'{}' defines {} attributes, expected {}",
                    net.name,
                    net.attributes.len(),
                    reference.len()
                )));
            }
            for (a, b) in net.attributes.iter().zip(reference) {
                if a.name != b.name || a.direction != b.direction || a.units != b.units {
                    return Err(Error::AttributeListMismatch(format!(
                        "'{}' attribute '{}' disagrees with '{}'",
                        net.name, a.name, b.name
                    )));
                }
            }
            for spec in &net.attributes {
                spec.validate()?;
            }
        }
        Ok(())
    }

    /// Attribute specs shared by all networks (names, units, directions).
    pub fn attribute_template(&self) -> &[AttributeSpec] {
        &self.networks[0].attributes
    }

    pub fn n_attributes(&self) -> usize {
        self.networks[0].attributes.len()
    }
}

/// How a ranking-abnormality event is detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AbnormalityRule {
    /// Any change anywhere in the survivors' relative order.
    #[default]
    Order,
    /// Only a change of the top choice counts.
    Top,
}

impl std::str::FromStr for AbnormalityRule {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "order" => Ok(AbnormalityRule::Order),
            "top" => Ok(AbnormalityRule::Top),
            other => Err(format!("unknown abnormality rule '{other}'")),
        }
    }
}

/// Measured outcome of one simulated episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeMetrics {
    pub method: Method,
    pub abnormality_pct: f64,
    pub handoff_pct: f64,
    pub selections: Vec<usize>,
}

/// Per-method means over a set of episodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanMetrics {
    pub method: Method,
    pub abnormality_pct: f64,
    pub handoff_pct: f64,
    pub runs: usize,
}

// splitmix64; mixes the scenario seed with stream indices so that each
// (epoch, network, attribute) cell owns an independent draw and adding
// epochs never perturbs earlier ones.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn stream_seed(seed: u64, epoch: u64, network: u64, attribute: u64) -> u64 {
    let mut s = splitmix64(seed);
    s = splitmix64(s ^ epoch);
    s = splitmix64(s ^ network);
    splitmix64(s ^ attribute)
}

/// Independent scenario seed for run `run` of a multi-run batch.
pub fn derive_run_seed(base: u64, run: u32) -> u64 {
    splitmix64(splitmix64(base) ^ (run as u64 + 1))
}

/// Draw one decision matrix for the given epoch. Fixed attributes are copied
/// verbatim; ranged attributes are sampled uniformly from [lo, hi].
/// Deterministic given (seed, epoch).
pub fn sample_decision_matrix(s: &ScenarioSpec, epoch: usize) -> Result<DecisionMatrix> {
    s.validate()?;
    let mut values = Vec::with_capacity(s.networks.len());
    for (ni, net) in s.networks.iter().enumerate() {
        let mut row = Vec::with_capacity(net.attributes.len());
        for (ai, attr) in net.attributes.iter().enumerate() {
            let (lo, hi) = attr.value_model.bounds();
            let v = if lo == hi {
                lo
            } else {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(stream_seed(s.seed, epoch as u64, ni as u64, ai as u64));
                rng.gen_range(lo..=hi)
            };
            row.push(v);
        }
        values.push(row);
    }
    DecisionMatrix::new(
        s.networks.iter().map(|n| n.name.clone()).collect(),
        s.attribute_template().to_vec(),
        values,
    )
}

/// Per-episode ranking and abnormality options.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EpisodeOptions {
    pub rule: AbnormalityRule,
    pub gra: GraConfig,
}

fn rank_with(method: Method, m: &DecisionMatrix, w: &WeightVector, gra: GraConfig) -> Result<Ranking> {
    match method {
        Method::Gra => rank_gra_with(m, w, gra),
        other => rank(other, m, w),
    }
}

/// True iff removing the worst-ranked alternative changes the relative
/// order of the survivors. Defined as false for fewer than 3 alternatives.
pub fn detect_abnormality(
    m: &DecisionMatrix,
    w: &WeightVector,
    method: Method,
    rule: AbnormalityRule,
) -> Result<bool> {
    if m.n_alternatives() < 3 {
        return Ok(false);
    }
    let gra = GraConfig::default();
    let full = rank_with(method, m, w, gra)?;
    Ok(abnormality_after_removal(m, w, method, rule, gra, &full)?.0)
}

fn abnormality_after_removal(
    m: &DecisionMatrix,
    w: &WeightVector,
    method: Method,
    rule: AbnormalityRule,
    gra: GraConfig,
    full: &Ranking,
) -> Result<(bool, Ranking)> {
    let worst = *full.order.last().expect("non-empty order");
    let survivors: Vec<usize> = (0..m.n_alternatives()).filter(|&i| i != worst).collect();
    let reduced = m.restrict_rows(&survivors);
    let rr = rank_with(method, &reduced, w, gra)?;
    // map reduced-matrix indices back to original alternative indices
    let new_order: Vec<usize> = rr.order.iter().map(|&i| survivors[i]).collect();
    let old_order: Vec<usize> = full.order.iter().copied().filter(|&i| i != worst).collect();
    let changed = match rule {
        AbnormalityRule::Order => new_order != old_order,
        AbnormalityRule::Top => new_order[0] != old_order[0],
    };
    Ok((changed, rr))
}

/// Run one full episode: sample, rank and record at every epoch, then
/// aggregate to the two percentage metrics.
pub fn run_episode(
    s: &ScenarioSpec,
    method: Method,
    w: &WeightVector,
    rule: AbnormalityRule,
) -> Result<EpisodeMetrics> {
    run_episode_with(
        s,
        method,
        w,
        EpisodeOptions {
            rule,
            gra: GraConfig::default(),
        },
    )
}

pub fn run_episode_with(
    s: &ScenarioSpec,
    method: Method,
    w: &WeightVector,
    opts: EpisodeOptions,
) -> Result<EpisodeMetrics> {
    s.validate()?;
    let epochs = s.epochs as usize;
    let mut selections = Vec::with_capacity(epochs);
    let mut abnormal = 0usize;
    for epoch in 0..epochs {
        let step = || -> Result<(usize, bool)> {
            let m = sample_decision_matrix(s, epoch)?;
            let ranking = rank_with(method, &m, w, opts.gra)?;
            let flag = if m.n_alternatives() < 3 {
                false
            } else {
                abnormality_after_removal(&m, w, method, opts.rule, opts.gra, &ranking)?.0
            };
            Ok((ranking.best, flag))
        };
        let (best, flag) = step().map_err(|e| Error::EpisodeFailed {
            epoch,
            source: Box::new(e),
        })?;
        selections.push(best);
        if flag {
            abnormal += 1;
        }
    }
    let handoffs = selections.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(EpisodeMetrics {
        method,
        abnormality_pct: 100.0 * abnormal as f64 / epochs as f64,
        handoff_pct: 100.0 * handoffs as f64 / (epochs - 1) as f64,
        selections,
    })
}

/// Arithmetic mean of each percentage over same-method episodes.
pub fn summarize_metrics(runs: &[EpisodeMetrics]) -> Result<MeanMetrics> {
    let first = runs.first().ok_or(Error::EmptyMetrics)?;
    for r in runs {
        if r.method != first.method {
            return Err(Error::MixedMethods(
                first.method.to_string(),
                r.method.to_string(),
            ));
        }
    }
    let n = runs.len() as f64;
    Ok(MeanMetrics {
        method: first.method,
        abnormality_pct: runs.iter().map(|r| r.abnormality_pct).sum::<f64>() / n,
        handoff_pct: runs.iter().map(|r| r.handoff_pct).sum::<f64>() / n,
        runs: runs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::{Direction, ValueModel};

    fn attr(name: &str, direction: Direction, vm: ValueModel) -> AttributeSpec {
        AttributeSpec {
            name: name.into(),
            units: String::new(),
            direction,
            value_model: vm,
        }
    }

    fn fixed_scenario() -> ScenarioSpec {
        let mk = |b: f64, c: f64| {
            vec![
                attr("bw", Direction::Benefit, ValueModel::Fixed(b)),
                attr("delay", Direction::Cost, ValueModel::Fixed(c)),
            ]
        };
        ScenarioSpec {
            networks: vec![
                NetworkSpec { name: "A".into(), attributes: mk(5.0, 30.0) },
                NetworkSpec { name: "B".into(), attributes: mk(9.0, 10.0) },
                NetworkSpec { name: "C".into(), attributes: mk(2.0, 80.0) },
            ],
            epochs: 10,
            seed: 1,
        }
    }

    fn ranged_scenario(seed: u64) -> ScenarioSpec {
        let mk = |lo: f64, hi: f64| {
            vec![
                attr("bw", Direction::Benefit, ValueModel::UniformRange(lo, hi)),
                attr("delay", Direction::Cost, ValueModel::UniformRange(5.0, 50.0)),
            ]
        };
        ScenarioSpec {
            networks: vec![
                NetworkSpec { name: "A".into(), attributes: mk(1.0, 10.0) },
                NetworkSpec { name: "B".into(), attributes: mk(2.0, 9.0) },
                NetworkSpec { name: "C".into(), attributes: mk(0.5, 12.0) },
            ],
            epochs: 50,
            seed,
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed_and_epoch() {
        let s = ranged_scenario(42);
        let a = sample_decision_matrix(&s, 7).unwrap();
        let b = sample_decision_matrix(&s, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_decision_matrix(&s, 8).unwrap();
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn adding_epochs_never_perturbs_earlier_draws() {
        let mut s = ranged_scenario(42);
        let a = sample_decision_matrix(&s, 3).unwrap();
        s.epochs = 1000;
        let b = sample_decision_matrix(&s, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_range_always_yields_its_value() {
        let mut s = ranged_scenario(11);
        s.networks[0].attributes[0].value_model = ValueModel::UniformRange(4.0, 4.0);
        for epoch in 0..20 {
            let m = sample_decision_matrix(&s, epoch).unwrap();
            assert_eq!(m.values[0][0], 4.0);
        }
    }

    #[test]
    fn sampled_values_stay_in_range() {
        let s = ranged_scenario(3);
        for epoch in 0..50 {
            let m = sample_decision_matrix(&s, epoch).unwrap();
            for (ni, net) in s.networks.iter().enumerate() {
                for (ai, a) in net.attributes.iter().enumerate() {
                    let (lo, hi) = a.value_model.bounds();
                    let v = m.values[ni][ai];
                    assert!(v >= lo && v <= hi);
                }
            }
        }
    }

    #[test]
    fn fixed_scenario_never_hands_off() {
        let s = fixed_scenario();
        let w = WeightVector::uniform(2);
        for method in Method::ALL {
            let m = run_episode(&s, method, &w, AbnormalityRule::Order).unwrap();
            assert_eq!(m.handoff_pct, 0.0);
            assert!(m.selections.iter().all(|&i| i == m.selections[0]));
        }
    }

    #[test]
    fn two_epoch_switch_is_full_handoff_rate() {
        let m = EpisodeMetrics {
            method: Method::Gra,
            abnormality_pct: 0.0,
            handoff_pct: 0.0,
            selections: vec![0, 1],
        };
        let handoffs = m.selections.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(100.0 * handoffs as f64 / 1.0, 100.0);
    }

    #[test]
    fn two_alternatives_never_flag_abnormality() {
        let s = fixed_scenario();
        let m = sample_decision_matrix(&s, 0).unwrap();
        let m2 = m.restrict_rows(&[0, 1]);
        let w = WeightVector::uniform(2);
        assert!(!detect_abnormality(&m2, &w, Method::Gra, AbnormalityRule::Order).unwrap());
    }

    // Frozen 4x3 instance where removing the worst GRA alternative reverses
    // the two leaders, found by randomized search and checked against an
    // exhaustive re-rank.
    #[test]
    fn gra_rank_reversal_fixture_is_detected() {
        let m = DecisionMatrix::new(
            vec!["N0".into(), "N1".into(), "N2".into(), "N3".into()],
            vec![
                attr("a0", Direction::Cost, ValueModel::Fixed(0.0)),
                attr("a1", Direction::Benefit, ValueModel::Fixed(0.0)),
                attr("a2", Direction::Cost, ValueModel::Fixed(0.0)),
            ],
            vec![
                vec![58.0, 93.0, 45.0],
                vec![47.0, 11.0, 29.0],
                vec![14.0, 30.0, 61.0],
                vec![26.0, 44.0, 27.0],
            ],
        )
        .unwrap();
        let w = WeightVector::new(vec![0.4, 0.35, 0.25]).unwrap();
        let full = rank(Method::Gra, &m, &w).unwrap();
        assert_eq!(full.order, vec![3, 2, 0, 1]);
        assert!(detect_abnormality(&m, &w, Method::Gra, AbnormalityRule::Order).unwrap());
    }

    #[test]
    fn episode_is_reproducible_from_seed() {
        let s = ranged_scenario(99);
        let w = WeightVector::uniform(2);
        let a = run_episode(&s, Method::Topsis, &w, AbnormalityRule::Order).unwrap();
        let b = run_episode(&s, Method::Topsis, &w, AbnormalityRule::Order).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn summarize_averages_percentages() {
        let mk = |a: f64, h: f64| EpisodeMetrics {
            method: Method::Dia,
            abnormality_pct: a,
            handoff_pct: h,
            selections: vec![0, 0],
        };
        let mean = summarize_metrics(&[mk(20.0, 40.0), mk(40.0, 20.0)]).unwrap();
        assert_eq!(mean.abnormality_pct, 30.0);
        assert_eq!(mean.handoff_pct, 30.0);

        let single = summarize_metrics(&[mk(15.0, 25.0)]).unwrap();
        assert_eq!((single.abnormality_pct, single.handoff_pct), (15.0, 25.0));

        assert!(matches!(summarize_metrics(&[]), Err(Error::EmptyMetrics)));
    }

    #[test]
    fn epochs_below_two_are_rejected() {
        let mut s = fixed_scenario();
        s.epochs = 1;
        assert!(matches!(s.validate(), Err(Error::TooFewEpochs(1))));
    }
}
