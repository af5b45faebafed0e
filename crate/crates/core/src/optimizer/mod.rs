//! Minimizing the expected legal damages over per-group threshold pairs.
//!
//! Candidates come from [`get_thresholds`]: for each grid value, the pair that
//! keeps the number of positive predictions closest to the target. Each
//! measure contributes a curve of damages relative to the candidate that
//! measure likes best, and the weighted sum of those curves is minimized.

mod candidates;
mod cost;
pub mod oracle;

use std::collections::BTreeSet;

use serde::Serialize;

pub use candidates::{get_thresholds, CandidateSet, Grid};
pub use cost::{
    cost_sensitivity, lgfo_objective, misclassification_cost, per_measure_cost, CostCurve,
    CostModel, CurveKind, MeasureWeights, SensitivityPoint, TIE_TOLERANCE,
};
pub use oracle::{brute_force_oracle, OracleResult, OracleRow};

use crate::error::{Error, Result};
use crate::measures::{evaluate, Dataset, Evaluation, Measure, ThresholdPair};

pub const DEFAULT_GRID_STEP: f64 = 0.02;

#[derive(Debug, Clone, PartialEq)]
pub struct LgfoParams {
    pub measures: Vec<Measure>,
    pub weights: MeasureWeights,
    pub costs: CostModel,
    pub target_positives: usize,
    pub grid_step: f64,
    pub baseline: ThresholdPair,
}

impl LgfoParams {
    /// Uniform weights, the default grid, the uncorrected baseline and a
    /// positive-prediction target equal to the dataset's label positives.
    pub fn new(dataset: &Dataset, measures: &[Measure], costs: CostModel) -> Result<Self> {
        Ok(LgfoParams {
            measures: measures.to_vec(),
            weights: MeasureWeights::uniform(measures)?,
            costs,
            target_positives: dataset.label_positives(),
            grid_step: DEFAULT_GRID_STEP,
            baseline: ThresholdPair::UNCORRECTED,
        })
    }

    /// The measure set in canonical order, checked against the weights.
    pub fn measure_set(&self) -> Result<Vec<Measure>> {
        if self.measures.is_empty() {
            return Err(Error::EmptyMeasureSet);
        }
        let set: Vec<Measure> = self
            .measures
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let weighted: Vec<Measure> = self.weights.measures().collect();
        if set != weighted {
            return Err(Error::InvalidWeights(format!(
                "weights cover {weighted:?} but the measure set is {set:?}"
            )));
        }
        Ok(set)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LgfoResult {
    pub optimal: ThresholdPair,
    pub optimal_index: usize,
    pub candidates: CandidateSet,
    /// Measure values and accuracy of every candidate, index-aligned.
    pub evaluations: Vec<Evaluation>,
    pub per_measure_curves: Vec<CostCurve>,
    pub summed_curve: CostCurve,
    pub baseline: ThresholdPair,
    pub at_optimal: Evaluation,
    pub at_baseline: Evaluation,
}

impl LgfoResult {
    pub fn curve(&self, measure: Measure) -> Option<&CostCurve> {
        self.per_measure_curves
            .iter()
            .find(|c| c.measure() == Some(measure))
    }

    /// Candidate index at which `measure` attains its own optimum.
    pub fn measure_optimum(&self, measure: Measure) -> Option<usize> {
        match self.curve(measure)?.kind {
            CurveKind::Measure { optimum_index, .. } => Some(optimum_index),
            CurveKind::Summed => None,
        }
    }
}

/// Baseline-versus-optimum comparison row set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub baseline: Evaluation,
    pub optimal: Evaluation,
}

pub fn minimize_lgfo(dataset: &Dataset, params: &LgfoParams) -> Result<LgfoResult> {
    let measures = params.measure_set()?;
    let candidates = get_thresholds(dataset, params.target_positives, params.grid_step)?;
    let evaluations: Vec<Evaluation> = candidates.iter().map(|p| evaluate(dataset, p)).collect();

    let per_measure_curves: Vec<CostCurve> = measures
        .iter()
        .map(|&m| {
            let values: Vec<f64> = evaluations.iter().map(|e| e.get(m).value).collect();
            cost::curve_from_values(dataset, &candidates, m, &values, &params.costs)
        })
        .collect();
    let summed_curve = lgfo_objective(&per_measure_curves, &params.weights)?;
    let optimal_index = summed_curve.argmin();
    let optimal = candidates.pairs()[optimal_index];

    Ok(LgfoResult {
        optimal,
        optimal_index,
        at_optimal: evaluations[optimal_index],
        at_baseline: evaluate(dataset, &params.baseline),
        baseline: params.baseline,
        candidates,
        evaluations,
        per_measure_curves,
        summed_curve,
    })
}
