//! Exhaustive evaluation of every candidate straight from the definitions.
//!
//! Shares nothing with the optimizer beyond [`predict`]: counts, measures,
//! damages and the weighted sum are all recomputed here. Intended for tests
//! and small candidate sets.

use super::candidates::CandidateSet;
use super::cost::{CostModel, MeasureWeights, TIE_TOLERANCE};
use crate::measures::{predict, Dataset, Group, Measure, ThresholdPair};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub pair: ThresholdPair,
    /// Measure values, one per measure of the weights in canonical order.
    pub measure_values: Vec<f64>,
    pub measure_costs: Vec<f64>,
    pub summed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub measures: Vec<Measure>,
    pub optimal: ThresholdPair,
    pub optimal_index: usize,
    /// Index of each measure's own optimum, aligned with `measures`.
    pub measure_optima: Vec<usize>,
    pub table: Vec<OracleRow>,
}

impl OracleResult {
    pub fn measure_curve(&self, position: usize) -> Vec<f64> {
        self.table
            .iter()
            .map(|r| r.measure_costs[position])
            .collect()
    }

    pub fn summed_curve(&self) -> Vec<f64> {
        self.table.iter().map(|r| r.summed).collect()
    }
}

fn measure_value(dataset: &Dataset, pair: &ThresholdPair, measure: Measure) -> f64 {
    // [group][predicted][label]
    let mut n = [[[0usize; 2]; 2]; 2];
    for x in dataset.iter() {
        let g = if x.group() == Group::One { 1 } else { 0 };
        n[g][predict(x, pair) as usize][x.label() as usize] += 1;
    }
    let rate = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    let per_group = |g: usize| -> Option<f64> {
        let [[tn, fn_], [fp, tp]] = n[g];
        match measure {
            Measure::StatisticalParity => rate(tp + fp, tp + fp + tn + fn_),
            Measure::Sufficiency => rate(tp, tp + fp),
            Measure::DeltaF => rate(fp, fp + tn),
        }
    };
    match (per_group(0), per_group(1)) {
        (Some(a), Some(b)) => (a - b).abs(),
        (None, None) => 0.0,
        _ => 1.0,
    }
}

fn first_minimum(values: &[f64]) -> usize {
    let mut min = f64::INFINITY;
    let mut scale = 0.0f64;
    for &v in values {
        if v < min {
            min = v;
        }
        if v.abs() > scale {
            scale = v.abs();
        }
    }
    let mut i = 0;
    while values[i] > min + TIE_TOLERANCE * scale {
        i += 1;
    }
    i
}

pub fn brute_force_oracle(
    dataset: &Dataset,
    candidates: &CandidateSet,
    weights: &MeasureWeights,
    costs: &CostModel,
) -> OracleResult {
    let measures: Vec<Measure> = weights.measures().collect();
    let pairs = candidates.pairs();

    let values: Vec<Vec<f64>> = pairs
        .iter()
        .map(|p| {
            measures
                .iter()
                .map(|&m| measure_value(dataset, p, m))
                .collect()
        })
        .collect();

    let measure_optima: Vec<usize> = (0..measures.len())
        .map(|j| first_minimum(&values.iter().map(|row| row[j]).collect::<Vec<_>>()))
        .collect();

    let mut table = Vec::with_capacity(pairs.len());
    for (i, pair) in pairs.iter().enumerate() {
        let mut measure_costs = Vec::with_capacity(measures.len());
        for &optimum in &measure_optima {
            let best = &pairs[optimum];
            let mut total = 0.0;
            for x in dataset.iter() {
                let delta = predict(x, pair) as i8 - predict(x, best) as i8;
                total += match delta {
                    1 => costs.p2n(),
                    -1 => costs.n2p(),
                    _ => 0.0,
                };
            }
            measure_costs.push(total);
        }
        let mut summed = 0.0;
        for (j, &m) in measures.iter().enumerate() {
            summed += weights.weight(m) * measure_costs[j];
        }
        table.push(OracleRow {
            pair: *pair,
            measure_values: values[i].clone(),
            measure_costs,
            summed,
        });
    }

    let summed: Vec<f64> = table.iter().map(|r| r.summed).collect();
    let optimal_index = first_minimum(&summed);
    OracleResult {
        measures,
        optimal: pairs[optimal_index],
        optimal_index,
        measure_optima,
        table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::fixtures::f1;
    use crate::optimizer::{get_thresholds, minimize_lgfo, LgfoParams};

    #[test]
    fn full_grid_table_has_one_row_per_pair() {
        let ds = f1();
        let set = CandidateSet::full_grid(0.5).unwrap();
        let out = brute_force_oracle(
            &ds,
            &set,
            &MeasureWeights::uniform(&Measure::ALL).unwrap(),
            &CostModel::new(1.0, 1.0).unwrap(),
        );
        assert_eq!(out.table.len(), 9);
    }

    #[test]
    fn agrees_with_optimizer_on_f1() {
        let ds = f1();
        let costs = CostModel::new(2.0, 3.0).unwrap();
        for step in [0.5, 0.25, 0.1, 0.02] {
            let params = LgfoParams {
                grid_step: step,
                ..LgfoParams::new(&ds, &Measure::ALL, costs).unwrap()
            };
            let result = minimize_lgfo(&ds, &params).unwrap();
            let set = get_thresholds(&ds, params.target_positives, step).unwrap();
            let oracle = brute_force_oracle(&ds, &set, &params.weights, &costs);
            assert_eq!(oracle.optimal, result.optimal);
            assert_eq!(oracle.summed_curve(), result.summed_curve.values);
            for (j, curve) in result.per_measure_curves.iter().enumerate() {
                assert_eq!(oracle.measure_curve(j), curve.values);
            }
        }
    }
}
