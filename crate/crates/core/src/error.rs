use std::io;

use crate::measures::Group;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("score {0} is outside [0, 1]")]
    ScoreOutOfRange(f64),
    #[error("threshold {0} is outside [0, 1]")]
    ThresholdOutOfRange(f64),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("group {} absent", .0.index())]
    MissingGroup(Group),
    #[error("grid step {0} does not evenly divide 1")]
    InvalidGridStep(f64),
    #[error("threshold pair ({t0}, {t1}) is not on the grid with step {step}")]
    OffGrid { t0: f64, t1: f64, step: f64 },
    #[error("target positives {target} exceeds dataset size {size}")]
    TargetOutOfRange { target: usize, size: usize },
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error("measure set is empty")]
    EmptyMeasureSet,
    #[error("invalid cost `{field}`: {value} (must be finite and non-negative)")]
    InvalidCost { field: &'static str, value: f64 },
    #[error("degenerate cost model (p2n and n2p are both zero)")]
    DegenerateCostModel,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("cost curves do not match: {0}")]
    CurveMismatch(String),
    #[error("unknown measure `{0}` (expected sp, suff or delta_f)")]
    UnknownMeasure(String),
    #[error("{column} {reason} at row {row}")]
    Parse {
        row: usize,
        column: String,
        reason: String,
    },
    #[error("invalid `{field}`: {message}")]
    Config { field: String, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
