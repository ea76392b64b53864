//! Decision engine and evaluation harness for wireless network selection.
//!
//! Ranks candidate access networks with three multi-attribute decision
//! methods (TOPSIS, GRA, DIA) under pairwise-comparison weights, simulates
//! repeated handover decisions over a randomized heterogeneous scenario,
//! and scores the decision methods themselves with a criticality-analysis
//! evaluation pipeline.

pub mod ahp;
pub mod config;
pub mod decision;
pub mod error;
pub mod evaluator;
pub mod fixtures;
pub mod report;
pub mod simulator;

pub use decision::{
    normalize_minmax, rank, rank_dia, rank_gra, rank_topsis, AttributeSpec, DecisionMatrix,
    Direction, Method, Ranking, ValueModel, WeightVector,
};
pub use error::{Error, Result};
