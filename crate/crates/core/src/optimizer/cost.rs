use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use super::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::measures::{confusion, predict, Dataset, Measure, ThresholdPair};

/// Expected damages of flipping one individual's outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostModel {
    p2n: f64,
    n2p: f64,
}

impl CostModel {
    pub fn new(p2n: f64, n2p: f64) -> Result<Self> {
        for (field, value) in [("p2n", p2n), ("n2p", n2p)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidCost { field, value });
            }
        }
        if p2n == 0.0 && n2p == 0.0 {
            return Err(Error::DegenerateCostModel);
        }
        Ok(CostModel { p2n, n2p })
    }

    /// Cost of a positive outcome becoming negative.
    pub fn p2n(&self) -> f64 {
        self.p2n
    }

    /// Cost of a negative outcome becoming positive.
    pub fn n2p(&self) -> f64 {
        self.n2p
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        CostModel::new(self.p2n * factor, self.n2p * factor)
    }
}

/// Court-preference probabilities over a set of measures, normalized to sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureWeights {
    weights: BTreeMap<Measure, f64>,
}

impl MeasureWeights {
    pub fn new(raw: impl IntoIterator<Item = (Measure, f64)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (measure, w) in raw {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "weight for {} must be finite and non-negative, got {w}",
                    measure.key()
                )));
            }
            if weights.insert(measure, w).is_some() {
                return Err(Error::InvalidWeights(format!(
                    "duplicate weight for {}",
                    measure.key()
                )));
            }
        }
        let total: f64 = weights.values().sum();
        if weights.is_empty() || total <= 0.0 {
            return Err(Error::InvalidWeights(
                "at least one weight must be positive".into(),
            ));
        }
        weights.values_mut().for_each(|w| *w /= total);
        Ok(MeasureWeights { weights })
    }

    pub fn uniform(measures: &[Measure]) -> Result<Self> {
        if measures.is_empty() {
            return Err(Error::EmptyMeasureSet);
        }
        let unique: BTreeSet<_> = measures.iter().copied().collect();
        MeasureWeights::new(unique.into_iter().map(|m| (m, 1.0)))
    }

    /// Normalized weight, zero for measures outside the set.
    pub fn weight(&self, measure: Measure) -> f64 {
        self.weights.get(&measure).copied().unwrap_or(0.0)
    }

    /// Measures in canonical order.
    pub fn measures(&self) -> impl Iterator<Item = Measure> + '_ {
        self.weights.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Measure, f64)> + '_ {
        self.weights.iter().map(|(&m, &w)| (m, w))
    }
}

impl Serialize for MeasureWeights {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.weights.iter().map(|(m, w)| (m.key(), w)))
    }
}

/// Damages for one individual when moving from the decision under `yhat_j`
/// to the decision under `yhat_i`.
pub fn misclassification_cost(yhat_i: bool, yhat_j: bool, costs: &CostModel) -> f64 {
    match (yhat_i, yhat_j) {
        (true, false) => costs.p2n,
        (false, true) => costs.n2p,
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    /// Cost of each candidate relative to the measure's own optimum.
    Measure {
        measure: Measure,
        optimum_index: usize,
    },
    Summed,
}

/// Cost values aligned index-for-index with a [`CandidateSet`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostCurve {
    pub kind: CurveKind,
    pub values: Vec<f64>,
}

impl CostCurve {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn measure(&self) -> Option<Measure> {
        match self.kind {
            CurveKind::Measure { measure, .. } => Some(measure),
            CurveKind::Summed => None,
        }
    }

    pub fn argmin(&self) -> usize {
        argmin_first(&self.values)
    }
}

/// Relative band within which two values count as tied for the minimum.
///
/// Sums of the same damages accumulated in different orders may differ in the
/// last bits; this keeps tie-breaking on canonical order rather than rounding.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Index of the first value within the tie band of the minimum.
pub(crate) fn argmin_first(values: &[f64]) -> usize {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let band = TIE_TOLERANCE * scale;
    values
        .iter()
        .position(|&v| v <= min + band)
        .expect("argmin of an empty slice")
}

/// Sum of per-example damages between the decisions under `pair` and `reference`.
pub(crate) fn flip_cost(
    dataset: &Dataset,
    pair: &ThresholdPair,
    reference: &[bool],
    costs: &CostModel,
) -> f64 {
    dataset
        .iter()
        .zip(reference)
        .map(|(x, &yhat_ref)| misclassification_cost(predict(x, pair), yhat_ref, costs))
        .sum()
}

pub(crate) fn curve_from_values(
    dataset: &Dataset,
    candidates: &CandidateSet,
    measure: Measure,
    measure_values: &[f64],
    costs: &CostModel,
) -> CostCurve {
    let optimum_index = argmin_first(measure_values);
    let optimum = candidates.pairs()[optimum_index];
    let reference: Vec<bool> = dataset.iter().map(|x| predict(x, &optimum)).collect();
    let values = candidates
        .iter()
        .map(|pair| flip_cost(dataset, pair, &reference, costs))
        .collect();
    CostCurve {
        kind: CurveKind::Measure {
            measure,
            optimum_index,
        },
        values,
    }
}

/// Cost of every candidate relative to the first candidate minimizing `measure`.
pub fn per_measure_cost(
    dataset: &Dataset,
    candidates: &CandidateSet,
    measure: Measure,
    costs: &CostModel,
) -> Result<CostCurve> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let values: Vec<f64> = candidates
        .iter()
        .map(|pair| confusion(dataset, pair).measure(measure).value)
        .collect();
    Ok(curve_from_values(
        dataset, candidates, measure, &values, costs,
    ))
}

/// Weighted sum of per-measure curves.
pub fn lgfo_objective(curves: &[CostCurve], weights: &MeasureWeights) -> Result<CostCurve> {
    let mut by_measure = BTreeMap::new();
    for curve in curves {
        let measure = curve.measure().ok_or_else(|| {
            Error::CurveMismatch("summed curve passed as a per-measure curve".into())
        })?;
        if by_measure.insert(measure, curve).is_some() {
            return Err(Error::CurveMismatch(format!(
                "two curves for {}",
                measure.key()
            )));
        }
    }
    let curve_measures: Vec<Measure> = by_measure.keys().copied().collect();
    let weight_measures: Vec<Measure> = weights.measures().collect();
    if curve_measures != weight_measures {
        return Err(Error::CurveMismatch(format!(
            "curves cover {curve_measures:?} but weights cover {weight_measures:?}"
        )));
    }
    let len = curves.first().ok_or(Error::EmptyMeasureSet)?.len();
    if curves.iter().any(|c| c.len() != len) {
        return Err(Error::CurveMismatch("curve lengths differ".into()));
    }
    let values = (0..len)
        .map(|i| {
            by_measure
                .iter()
                .map(|(&m, curve)| weights.weight(m) * curve.values[i])
                .sum()
        })
        .collect();
    Ok(CostCurve {
        kind: CurveKind::Summed,
        values,
    })
}

/// One candidate's measure value and its cost against the measure optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityPoint {
    pub index: usize,
    pub measure_value: f64,
    pub cost: f64,
}

/// Candidates' (measure value, cost) points, sorted by measure value.
pub fn cost_sensitivity(
    dataset: &Dataset,
    candidates: &CandidateSet,
    measure: Measure,
    costs: &CostModel,
) -> Result<Vec<SensitivityPoint>> {
    let values: Vec<f64> = candidates
        .iter()
        .map(|pair| confusion(dataset, pair).measure(measure).value)
        .collect();
    if values.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let curve = curve_from_values(dataset, candidates, measure, &values, costs);
    let mut points: Vec<SensitivityPoint> = values
        .iter()
        .zip(&curve.values)
        .enumerate()
        .map(|(index, (&measure_value, &cost))| SensitivityPoint {
            index,
            measure_value,
            cost,
        })
        .collect();
    points.sort_by(|a, b| a.measure_value.total_cmp(&b.measure_value));
    Ok(points)
}
