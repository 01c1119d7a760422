//! Experiment orchestration: split, fit the five models, report, persist.

mod curves;
mod experiment;
mod model_io;
mod report;
mod split;

pub use curves::{emit_curves, CurveTable};
pub use experiment::{
    run_experiment, run_on_records, run_on_split, CongestionFilter, DataSource,
    ExperimentConfig, ExperimentRun, ModelKind, TrainedModel,
};
pub use model_io::{load_model, save_model, to_canonical_json, SavedModel, MODEL_FORMAT, MODEL_VERSION};
pub use report::{emit_report, ExperimentReport, ModelRow, ReportFormat, ACCURACY_NOTE};
pub use split::split_train_test;

use thiserror::Error;

use crate::classifier::ClassifierError;
use crate::spline_core::SplineError;
use crate::vanet_sim::SimError;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("split error: {0}")]
    SplitError(String),
    #[error("model load error: {0}")]
    ModelLoadError(String),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Spline(#[from] SplineError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PipelineError {
    /// Process exit code: 1 usage/config, 2 data, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            PipelineError::Sim(SimError::ConfigError { .. }) => 1,
            PipelineError::Classifier(ClassifierError::Singular) => 3,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(PipelineError::Config("x".into()).exit_code(), 1);
        let cfg = SimError::ConfigError {
            field: "n_records".into(),
            reason: "0".into(),
        };
        assert_eq!(PipelineError::Sim(cfg).exit_code(), 1);
        assert_eq!(PipelineError::SplitError("x".into()).exit_code(), 2);
        assert_eq!(PipelineError::ModelLoadError("x".into()).exit_code(), 2);
        assert_eq!(PipelineError::Classifier(ClassifierError::Singular).exit_code(), 3);
    }
}
