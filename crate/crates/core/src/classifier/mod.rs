//! Spline-basis logistic classification and confusion-matrix metrics.

mod design;
mod logistic;
mod metrics;

pub use design::{build_design_matrix, DesignMatrix};
pub use logistic::{
    fit_logistic, log_likelihood, log_likelihood_gradient, predict_prob, sigmoid, FitOptions,
    LogisticModel,
};
pub use metrics::{accuracy, classify, confusion_matrix, ConfusionMatrix};

use thiserror::Error;

use crate::spline_core::SplineError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifierError {
    #[error("no data")]
    EmptyData,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("row {row}: {source}")]
    OutOfDomain { row: usize, source: SplineError },
    #[error("label {0} is not 0 or 1")]
    BadLabel(u8),
    #[error("weighted normal equations are singular even after ridge jitter")]
    Singular,
    #[error(transparent)]
    Spline(#[from] SplineError),
}
