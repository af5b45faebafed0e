//! Per-group decision thresholds that minimize the expected legal damages of
//! deviating from each fairness measure's preferred configuration.
//!
//! - [`measures`]: confusion counts and the statistical parity, sufficiency
//!   and false-positive-rate gap measures.
//! - [`optimizer`]: candidate enumeration, damage curves and the weighted
//!   objective, plus an exhaustive oracle.
//! - [`pipeline`]: CSV/JSON ingestion, a seeded synthetic score generator
//!   and report output.

pub mod error;
pub mod measures;
pub mod optimizer;
pub mod pipeline;

pub use error::{Error, Result};
pub use measures::{Dataset, Evaluation, Group, Measure, ScoredExample, ThresholdPair};
pub use optimizer::{
    minimize_lgfo, CandidateSet, CostCurve, CostModel, LgfoParams, LgfoResult, MeasureWeights,
};
pub use pipeline::{Report, RunConfig, SynthSpec};
