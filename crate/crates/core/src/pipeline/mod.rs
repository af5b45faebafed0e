//! Ingestion, configuration, synthetic fixtures and report emission.

mod config;
mod data;
mod report;
mod synth;

pub use config::{parse_config, EffectiveConfig, RunConfig};
pub use data::{parse_dataset, write_dataset, HEADER};
pub use report::{
    emit_curves, run, CandidateRow, ComparisonRow, ComparisonTable, CurveSummary, DatasetSummary,
    OptimalSummary, Report,
};
pub use synth::{generate_synthetic, parse_synth_spec, GroupSpec, SynthSpec, REFERENCE_SEED};
