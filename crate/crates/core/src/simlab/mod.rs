//! Simulation tooling: standardized source distributions, mixing matrices,
//! source layouts, the Monte-Carlo harness and the limiting-variance calculator.

mod asv;
mod distributions;
mod experiment;
mod mixing;
mod settings;

pub use asv::{asv_diag, asv_offdiag, asv_profile, asv_table, vector, AsvRow, AsymptoticProfile, ModeProfile};
pub use distributions::{sample_source, Distribution, Moments, Sampler};
pub use experiment::{
    run_experiment, run_replication, substream, ExperimentConfig, ExperimentOutput, ExperimentResult,
    FitStatus, OneOrMany, SettingRef, Summary, SummaryRow, RESULTS_HEADER, SUMMARY_HEADER,
};
pub use mixing::{haar_orthogonal, MixingKind, MAX_CONDITION};
pub use settings::SettingSpec;
