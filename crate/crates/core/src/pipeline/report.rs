use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::config::{EffectiveConfig, RunConfig};
use crate::error::Result;
use crate::measures::{Dataset, Evaluation, Group, Measure, MeasureValue, ThresholdPair};
use crate::optimizer::{minimize_lgfo, LgfoResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetSummary {
    pub size: usize,
    pub group_sizes: [usize; 2],
    pub base_rates: [f64; 2],
    pub label_positives: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateRow {
    pub index: usize,
    pub t0: f64,
    pub t1: f64,
    pub positives: usize,
    pub accuracy: f64,
    pub sp: MeasureValue,
    pub suff: MeasureValue,
    pub delta_f: MeasureValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSummary {
    pub optimum_index: usize,
    pub optimum: ThresholdPair,
    pub costs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalSummary {
    pub index: usize,
    pub pair: ThresholdPair,
    pub summed_cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub pair: ThresholdPair,
    pub sp: f64,
    pub suff: f64,
    pub delta_f: f64,
    pub accuracy: f64,
    pub positives: usize,
    /// Measures whose value came from the undefined-denominator policy.
    pub undefined_denominator: Vec<&'static str>,
}

impl ComparisonRow {
    fn new(pair: ThresholdPair, e: &Evaluation) -> Self {
        ComparisonRow {
            pair,
            sp: e.sp.value,
            suff: e.suff.value,
            delta_f: e.delta_f.value,
            accuracy: e.accuracy,
            positives: e.positives,
            undefined_denominator: Measure::ALL
                .into_iter()
                .filter(|&m| e.get(m).undefined_denominator)
                .map(Measure::key)
                .collect(),
        }
    }
}

/// Uncorrected classifier versus the cost-optimal thresholds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub baseline: ComparisonRow,
    pub optimal: ComparisonRow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: EffectiveConfig,
    pub dataset: DatasetSummary,
    pub candidates: Vec<CandidateRow>,
    pub curves: BTreeMap<&'static str, CurveSummary>,
    pub summed_curve: Vec<f64>,
    pub optimal: OptimalSummary,
    pub comparison: ComparisonTable,
    #[serde(skip)]
    pub result: LgfoResult,
}

impl Report {
    fn build(config: EffectiveConfig, dataset: &Dataset, result: LgfoResult) -> Self {
        let candidates = result
            .candidates
            .iter()
            .zip(&result.evaluations)
            .enumerate()
            .map(|(index, (pair, e))| CandidateRow {
                index,
                t0: pair.t0(),
                t1: pair.t1(),
                positives: e.positives,
                accuracy: e.accuracy,
                sp: e.sp,
                suff: e.suff,
                delta_f: e.delta_f,
            })
            .collect();
        let curves = result
            .per_measure_curves
            .iter()
            .filter_map(|curve| {
                let measure = curve.measure()?;
                let optimum_index = result.measure_optimum(measure)?;
                Some((
                    measure.key(),
                    CurveSummary {
                        optimum_index,
                        optimum: result.candidates.pairs()[optimum_index],
                        costs: curve.values.clone(),
                    },
                ))
            })
            .collect();
        Report {
            config,
            dataset: DatasetSummary {
                size: dataset.len(),
                group_sizes: Group::BOTH.map(|g| dataset.group_size(g)),
                base_rates: Group::BOTH.map(|g| dataset.base_rate(g)),
                label_positives: dataset.label_positives(),
            },
            candidates,
            curves,
            summed_curve: result.summed_curve.values.clone(),
            optimal: OptimalSummary {
                index: result.optimal_index,
                pair: result.optimal,
                summed_cost: result.summed_curve.values[result.optimal_index],
            },
            comparison: ComparisonTable {
                baseline: ComparisonRow::new(result.baseline, &result.at_baseline),
                optimal: ComparisonRow::new(result.optimal, &result.at_optimal),
            },
            result,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut out = serde_json::to_string_pretty(self)?;
        out.push('\n');
        Ok(out)
    }
}

pub fn run(dataset: &Dataset, config: &RunConfig) -> Result<Report> {
    let params = config.params(dataset)?;
    let result = minimize_lgfo(dataset, &params)?;
    Ok(Report::build(config.effective(&params), dataset, result))
}

/// Plot-ready table: index, thresholds, measure values, measure costs, summed cost.
pub fn emit_curves(report: &Report) -> String {
    let measures: Vec<Measure> = report
        .result
        .per_measure_curves
        .iter()
        .filter_map(|c| c.measure())
        .collect();
    let mut out = String::from("index,t0,t1");
    for m in &measures {
        write!(out, ",{}", m.key()).unwrap();
    }
    for m in &measures {
        write!(out, ",cost_{}", m.key()).unwrap();
    }
    out.push_str(",cost_sum\n");

    for (row, summed) in report.candidates.iter().zip(&report.summed_curve) {
        write!(out, "{},{},{}", row.index, row.t0, row.t1).unwrap();
        for &m in &measures {
            let value = match m {
                Measure::StatisticalParity => row.sp,
                Measure::Sufficiency => row.suff,
                Measure::DeltaF => row.delta_f,
            };
            write!(out, ",{}", value.value).unwrap();
        }
        for m in &measures {
            write!(out, ",{}", report.curves[m.key()].costs[row.index]).unwrap();
        }
        writeln!(out, ",{summed}").unwrap();
    }
    out
}
