//! Group confusion statistics and the three group unfairness measures.
//!
//! Every measure is the absolute between-group difference of one conditional
//! frequency, so it lies in `[0, 1]` and is `0` exactly when the groups agree.
//! When a group's conditional frequency has a zero denominator (no positive
//! predictions for precision, no negative labels for the false positive rate)
//! the measure evaluates to `1.0` and the value is flagged as undefined. If
//! both groups are undefined the groups are treated alike and the value is `0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Protected-attribute value of an example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Zero,
    One,
}

impl Group {
    pub const BOTH: [Group; 2] = [Group::Zero, Group::One];

    pub fn index(self) -> usize {
        match self {
            Group::Zero => 0,
            Group::One => 1,
        }
    }

    pub fn from_index(index: u8) -> Option<Group> {
        match index {
            0 => Some(Group::Zero),
            1 => Some(Group::One),
            _ => None,
        }
    }

    pub fn other(self) -> Group {
        match self {
            Group::Zero => Group::One,
            Group::One => Group::Zero,
        }
    }
}

/// One classifier output together with its group and ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredExample {
    id: String,
    score: f64,
    group: Group,
    label: bool,
}

impl ScoredExample {
    pub fn new(id: impl Into<String>, score: f64, group: Group, label: bool) -> Result<Self> {
        if !(0.0..=1.0).contains(&score) {
            return Err(Error::ScoreOutOfRange(score));
        }
        Ok(ScoredExample {
            id: id.into(),
            score,
            group,
            label,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn score(&self) -> f64 {
        self.score
    }

    pub fn group(&self) -> Group {
        self.group
    }

    /// Ground truth; `true` is the positive ("high risk") class.
    pub fn label(&self) -> bool {
        self.label
    }

    pub fn with_group(&self, group: Group) -> Self {
        ScoredExample {
            group,
            ..self.clone()
        }
    }

    pub fn with_label(&self, label: bool) -> Self {
        ScoredExample {
            label,
            ..self.clone()
        }
    }
}

/// A non-empty collection of examples containing both groups.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    examples: Vec<ScoredExample>,
    group_sizes: [usize; 2],
}

impl Dataset {
    pub fn new(examples: Vec<ScoredExample>) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut group_sizes = [0usize; 2];
        for example in &examples {
            group_sizes[example.group.index()] += 1;
        }
        for group in Group::BOTH {
            if group_sizes[group.index()] == 0 {
                return Err(Error::MissingGroup(group));
            }
        }
        Ok(Dataset {
            examples,
            group_sizes,
        })
    }

    pub fn examples(&self) -> &[ScoredExample] {
        &self.examples
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ScoredExample> {
        self.examples.iter()
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn group_size(&self, group: Group) -> usize {
        self.group_sizes[group.index()]
    }

    /// Number of examples whose ground-truth label is positive.
    pub fn label_positives(&self) -> usize {
        self.examples.iter().filter(|e| e.label).count()
    }

    /// Empirical `P(Y = 1 | G = group)`.
    pub fn base_rate(&self, group: Group) -> f64 {
        let positives = self
            .examples
            .iter()
            .filter(|e| e.group == group && e.label)
            .count();
        positives as f64 / self.group_size(group) as f64
    }

    pub fn into_examples(self) -> Vec<ScoredExample> {
        self.examples
    }
}

/// Per-group decision thresholds `(t0, t1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct ThresholdPair {
    t0: f64,
    t1: f64,
}

impl ThresholdPair {
    /// The uncorrected classifier.
    pub const UNCORRECTED: ThresholdPair = ThresholdPair { t0: 0.5, t1: 0.5 };

    pub fn new(t0: f64, t1: f64) -> Result<Self> {
        for t in [t0, t1] {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::ThresholdOutOfRange(t));
            }
        }
        Ok(ThresholdPair { t0, t1 })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn threshold(&self, group: Group) -> f64 {
        match group {
            Group::Zero => self.t0,
            Group::One => self.t1,
        }
    }

    pub fn swapped(&self) -> Self {
        ThresholdPair {
            t0: self.t1,
            t1: self.t0,
        }
    }
}

impl TryFrom<[f64; 2]> for ThresholdPair {
    type Error = Error;

    fn try_from(value: [f64; 2]) -> Result<Self> {
        ThresholdPair::new(value[0], value[1])
    }
}

impl From<ThresholdPair> for [f64; 2] {
    fn from(pair: ThresholdPair) -> Self {
        [pair.t0, pair.t1]
    }
}

impl fmt::Display for ThresholdPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t0, self.t1)
    }
}

/// Predicted label: positive iff the score reaches the group's threshold.
pub fn predict(example: &ScoredExample, pair: &ThresholdPair) -> bool {
    example.score >= pair.threshold(example.group)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GroupCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl GroupCounts {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn predicted_positive(&self) -> usize {
        self.tp + self.fp
    }

    pub fn label_negative(&self) -> usize {
        self.fp + self.tn
    }

    pub fn correct(&self) -> usize {
        self.tp + self.tn
    }

    /// `P(Ŷ = 1)`; the group is non-empty by the dataset invariant.
    pub fn positive_rate(&self) -> f64 {
        self.predicted_positive() as f64 / self.total() as f64
    }

    /// `P(Y = 1 | Ŷ = 1)`, undefined without positive predictions.
    pub fn precision(&self) -> Option<f64> {
        match self.predicted_positive() {
            0 => None,
            n => Some(self.tp as f64 / n as f64),
        }
    }

    /// `P(Ŷ = 1 | Y = 0)`, undefined without negative labels.
    pub fn false_positive_rate(&self) -> Option<f64> {
        match self.label_negative() {
            0 => None,
            n => Some(self.fp as f64 / n as f64),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GroupConfusion {
    pub group0: GroupCounts,
    pub group1: GroupCounts,
}

impl GroupConfusion {
    pub fn group(&self, group: Group) -> &GroupCounts {
        match group {
            Group::Zero => &self.group0,
            Group::One => &self.group1,
        }
    }

    fn group_mut(&mut self, group: Group) -> &mut GroupCounts {
        match group {
            Group::Zero => &mut self.group0,
            Group::One => &mut self.group1,
        }
    }

    pub fn positives(&self) -> usize {
        self.group0.predicted_positive() + self.group1.predicted_positive()
    }

    pub fn accuracy(&self) -> f64 {
        let total = self.group0.total() + self.group1.total();
        (self.group0.correct() + self.group1.correct()) as f64 / total as f64
    }

    pub fn measure(&self, measure: Measure) -> MeasureValue {
        match measure {
            Measure::StatisticalParity => MeasureValue::defined(
                (self.group0.positive_rate() - self.group1.positive_rate()).abs(),
            ),
            Measure::Sufficiency => {
                MeasureValue::difference(self.group0.precision(), self.group1.precision())
            }
            Measure::DeltaF => MeasureValue::difference(
                self.group0.false_positive_rate(),
                self.group1.false_positive_rate(),
            ),
        }
    }

    pub fn evaluate(&self) -> Evaluation {
        Evaluation {
            sp: self.measure(Measure::StatisticalParity),
            suff: self.measure(Measure::Sufficiency),
            delta_f: self.measure(Measure::DeltaF),
            accuracy: self.accuracy(),
            positives: self.positives(),
        }
    }
}

pub fn confusion(dataset: &Dataset, pair: &ThresholdPair) -> GroupConfusion {
    let mut out = GroupConfusion::default();
    for example in dataset.iter() {
        let counts = out.group_mut(example.group);
        match (predict(example, pair), example.label) {
            (true, true) => counts.tp += 1,
            (true, false) => counts.fp += 1,
            (false, false) => counts.tn += 1,
            (false, true) => counts.fn_ += 1,
        }
    }
    out
}

/// The group unfairness measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    /// Difference in positive-prediction rate.
    #[serde(rename = "sp")]
    StatisticalParity,
    /// Difference in precision.
    #[serde(rename = "suff")]
    Sufficiency,
    /// Difference in false positive rate.
    #[serde(rename = "delta_f")]
    DeltaF,
}

impl Measure {
    pub const ALL: [Measure; 3] = [
        Measure::StatisticalParity,
        Measure::Sufficiency,
        Measure::DeltaF,
    ];

    /// Identifier used in configuration files and report keys.
    pub fn key(self) -> &'static str {
        match self {
            Measure::StatisticalParity => "sp",
            Measure::Sufficiency => "suff",
            Measure::DeltaF => "delta_f",
        }
    }

    pub fn evaluate(self, dataset: &Dataset, pair: &ThresholdPair) -> MeasureValue {
        confusion(dataset, pair).measure(self)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::StatisticalParity => "SP",
            Measure::Sufficiency => "Suff",
            Measure::DeltaF => "ΔF",
        })
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.key() == s)
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureValue {
    pub value: f64,
    pub undefined_denominator: bool,
}

impl MeasureValue {
    fn defined(value: f64) -> Self {
        MeasureValue {
            value,
            undefined_denominator: false,
        }
    }

    /// An undefined rate counts as `1`; a lone undefined group makes the
    /// measure maximal, two undefined groups agree.
    fn difference(a: Option<f64>, b: Option<f64>) -> Self {
        match (a, b) {
            (Some(a), Some(b)) => MeasureValue::defined((a - b).abs()),
            (None, None) => MeasureValue {
                value: 0.0,
                undefined_denominator: true,
            },
            _ => MeasureValue {
                value: 1.0,
                undefined_denominator: true,
            },
        }
    }
}

/// All measure values plus accuracy for one threshold pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub sp: MeasureValue,
    pub suff: MeasureValue,
    pub delta_f: MeasureValue,
    pub accuracy: f64,
    pub positives: usize,
}

impl Evaluation {
    pub fn get(&self, measure: Measure) -> MeasureValue {
        match measure {
            Measure::StatisticalParity => self.sp,
            Measure::Sufficiency => self.suff,
            Measure::DeltaF => self.delta_f,
        }
    }
}

pub fn evaluate(dataset: &Dataset, pair: &ThresholdPair) -> Evaluation {
    confusion(dataset, pair).evaluate()
}

pub fn statistical_parity(dataset: &Dataset, pair: &ThresholdPair) -> f64 {
    Measure::StatisticalParity.evaluate(dataset, pair).value
}

pub fn sufficiency(dataset: &Dataset, pair: &ThresholdPair) -> f64 {
    Measure::Sufficiency.evaluate(dataset, pair).value
}

pub fn delta_f(dataset: &Dataset, pair: &ThresholdPair) -> f64 {
    Measure::DeltaF.evaluate(dataset, pair).value
}

pub fn accuracy(dataset: &Dataset, pair: &ThresholdPair) -> f64 {
    confusion(dataset, pair).accuracy()
}

pub fn positives_count(dataset: &Dataset, pair: &ThresholdPair) -> usize {
    dataset.iter().filter(|e| predict(e, pair)).count()
}
