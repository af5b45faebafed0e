use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{Dataset, Measure, ThresholdPair};
use crate::optimizer::{CostModel, LgfoParams, MeasureWeights, DEFAULT_GRID_STEP};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    measures: Vec<String>,
    #[serde(default)]
    weights: Option<BTreeMap<String, f64>>,
    p2n: f64,
    n2p: f64,
    #[serde(default)]
    target_positives: Option<usize>,
    #[serde(default)]
    grid_step: Option<f64>,
    #[serde(default)]
    baseline: Option<[f64; 2]>,
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub measures: Vec<Measure>,
    pub weights: MeasureWeights,
    pub costs: CostModel,
    /// `None` means the dataset's count of positive labels.
    pub target_positives: Option<usize>,
    pub grid_step: f64,
    pub baseline: ThresholdPair,
}

/// Configuration after defaults are resolved against a dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveConfig {
    pub measures: Vec<&'static str>,
    pub weights: MeasureWeights,
    pub p2n: f64,
    pub n2p: f64,
    pub target_positives: usize,
    pub grid_step: f64,
    pub baseline: ThresholdPair,
}

impl RunConfig {
    pub fn new(measures: &[Measure], costs: CostModel) -> Result<Self> {
        let measures = canonical(measures)?;
        Ok(RunConfig {
            weights: MeasureWeights::uniform(&measures)?,
            measures,
            costs,
            target_positives: None,
            grid_step: DEFAULT_GRID_STEP,
            baseline: ThresholdPair::UNCORRECTED,
        })
    }

    pub fn params(&self, dataset: &Dataset) -> Result<LgfoParams> {
        Ok(LgfoParams {
            measures: self.measures.clone(),
            weights: self.weights.clone(),
            costs: self.costs,
            target_positives: self
                .target_positives
                .unwrap_or_else(|| dataset.label_positives()),
            grid_step: self.grid_step,
            baseline: self.baseline,
        })
    }

    pub fn effective(&self, params: &LgfoParams) -> EffectiveConfig {
        EffectiveConfig {
            measures: self.measures.iter().map(|m| m.key()).collect(),
            weights: self.weights.clone(),
            p2n: self.costs.p2n(),
            n2p: self.costs.n2p(),
            target_positives: params.target_positives,
            grid_step: self.grid_step,
            baseline: self.baseline,
        }
    }
}

fn canonical(measures: &[Measure]) -> Result<Vec<Measure>> {
    if measures.is_empty() {
        return Err(Error::config(
            "measures",
            "at least one measure is required",
        ));
    }
    let mut out = measures.to_vec();
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_measure(key: &str, field: &str) -> Result<Measure> {
    key.parse()
        .map_err(|_| Error::config(field, format!("unknown measure `{key}`")))
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text)?;

    let measures = raw
        .measures
        .iter()
        .map(|k| parse_measure(k, "measures"))
        .collect::<Result<Vec<_>>>()?;
    let measures = canonical(&measures)?;

    let costs = match CostModel::new(raw.p2n, raw.n2p) {
        Err(Error::InvalidCost { field, value }) => {
            return Err(Error::config(
                field,
                format!("{value} is negative or not finite"),
            ))
        }
        other => other?,
    };

    let weights = match raw.weights {
        None => MeasureWeights::uniform(&measures)?,
        Some(map) => {
            let parsed = map
                .iter()
                .map(|(k, &w)| Ok((parse_measure(k, "weights")?, w)))
                .collect::<Result<Vec<_>>>()?;
            let mut keys: Vec<Measure> = parsed.iter().map(|(m, _)| *m).collect();
            keys.sort();
            if keys != measures {
                return Err(Error::config(
                    "weights",
                    "must give exactly one weight per configured measure",
                ));
            }
            MeasureWeights::new(parsed).map_err(|e| Error::config("weights", e.to_string()))?
        }
    };

    let grid_step = raw.grid_step.unwrap_or(DEFAULT_GRID_STEP);
    crate::optimizer::Grid::new(grid_step)
        .map_err(|e| Error::config("grid_step", e.to_string()))?;

    let baseline = match raw.baseline {
        None => ThresholdPair::UNCORRECTED,
        Some([t0, t1]) => {
            ThresholdPair::new(t0, t1).map_err(|e| Error::config("baseline", e.to_string()))?
        }
    };

    Ok(RunConfig {
        measures,
        weights,
        costs,
        target_positives: raw.target_positives,
        grid_step,
        baseline,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_configs() {
        let intermediate =
            parse_config(r#"{"measures":["sp","delta_f"],"p2n":0,"n2p":1}"#).unwrap();
        assert_eq!(
            intermediate.measures,
            vec![Measure::StatisticalParity, Measure::DeltaF]
        );
        assert_eq!(intermediate.costs.p2n(), 0.0);
        assert_eq!(intermediate.costs.n2p(), 1.0);
        assert_eq!(intermediate.weights.weight(Measure::DeltaF), 0.5);
        assert_eq!(intermediate.grid_step, 0.02);
        assert_eq!(intermediate.baseline, ThresholdPair::UNCORRECTED);
        assert_eq!(intermediate.target_positives, None);

        let single = parse_config(r#"{"measures":["sp","delta_f"],"p2n":1,"n2p":0}"#).unwrap();
        assert_eq!(single.costs.p2n(), 1.0);
        assert_eq!(single.costs.n2p(), 0.0);
    }

    #[test]
    fn full_config() {
        let c = parse_config(
            r#"{"measures":["suff","sp"],"weights":{"sp":3,"suff":1},"p2n":2,"n2p":1,
                "target_positives":10,"grid_step":0.1,"baseline":[0.4,0.6]}"#,
        )
        .unwrap();
        assert_eq!(
            c.measures,
            vec![Measure::StatisticalParity, Measure::Sufficiency]
        );
        assert_eq!(c.weights.weight(Measure::StatisticalParity), 0.75);
        assert_eq!(c.target_positives, Some(10));
        assert_eq!(c.grid_step, 0.1);
        assert_eq!(c.baseline, ThresholdPair::new(0.4, 0.6).unwrap());
    }

    #[test]
    fn validation_errors_name_the_field() {
        let cases = [
            (
                r#"{"measures":["sp"],"p2n":0,"n2p":0}"#,
                "degenerate cost model",
            ),
            (r#"{"measures":["sp"],"p2n":-1,"n2p":1}"#, "`p2n`"),
            (r#"{"measures":["eo"],"p2n":1,"n2p":1}"#, "`measures`"),
            (r#"{"measures":[],"p2n":1,"n2p":1}"#, "`measures`"),
            (
                r#"{"measures":["sp"],"weights":{"sp":0},"p2n":1,"n2p":1}"#,
                "`weights`",
            ),
            (
                r#"{"measures":["sp"],"weights":{"suff":1},"p2n":1,"n2p":1}"#,
                "`weights`",
            ),
            (
                r#"{"measures":["sp"],"p2n":1,"n2p":1,"grid_step":0.3}"#,
                "`grid_step`",
            ),
            (
                r#"{"measures":["sp"],"p2n":1,"n2p":1,"baseline":[0.5,2]}"#,
                "`baseline`",
            ),
            (r#"{"measures":["sp"],"n2p":1}"#, "`p2n`"),
            (
                r#"{"measures":["sp"],"p2n":1,"n2p":1,"extra":1}"#,
                "`extra`",
            ),
        ];
        for (text, needle) in cases {
            let err = parse_config(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
    }
}
