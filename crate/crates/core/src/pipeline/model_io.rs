//! Versioned JSON model files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ModelKind, PipelineError};
use crate::classifier::LogisticModel;
use crate::spline_core::SplineBasisSpec;

pub const MODEL_FORMAT: &str = "spline-ids-model";
pub const MODEL_VERSION: u32 = 1;

/// A fitted model together with how to score with it.
#[derive(Debug, Clone, PartialEq)]
pub struct SavedModel {
    pub kind: ModelKind,
    pub threshold: f64,
    pub model: LogisticModel,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    format: String,
    version: u32,
    model: ModelKind,
    threshold: f64,
    basis: Option<SplineBasisSpec>,
    intercept: f64,
    coefficients: Vec<f64>,
    converged: bool,
    iterations: usize,
    separation_flag: bool,
}

/// Canonical serialization: fixed field order, shortest round-trip floats,
/// trailing newline.
pub fn to_canonical_json(saved: &SavedModel) -> String {
    let m = &saved.model;
    let file = ModelFile {
        format: MODEL_FORMAT.to_string(),
        version: MODEL_VERSION,
        model: saved.kind,
        threshold: saved.threshold,
        basis: m.basis_spec.clone(),
        intercept: m.intercept,
        coefficients: m.coefficients.clone(),
        converged: m.converged,
        iterations: m.iterations,
        separation_flag: m.separation_flag,
    };
    let mut s = serde_json::to_string_pretty(&file).expect("model serializes");
    s.push('\n');
    s
}

pub fn save_model(path: &Path, saved: &SavedModel) -> Result<(), PipelineError> {
    std::fs::write(path, to_canonical_json(saved))?;
    Ok(())
}

fn parse(text: &str) -> Result<SavedModel, PipelineError> {
    let err = |m: String| PipelineError::ModelLoadError(m);
    let file: ModelFile = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    if file.format != MODEL_FORMAT {
        return Err(err(format!("not a model file (format {:?})", file.format)));
    }
    if file.version != MODEL_VERSION {
        return Err(err(format!(
            "unsupported model version {} (expected {MODEL_VERSION})",
            file.version
        )));
    }
    let expected = file.basis.as_ref().map_or(1, SplineBasisSpec::dimension);
    if file.coefficients.len() != expected {
        return Err(err(format!(
            "{} coefficients for a basis of dimension {expected}",
            file.coefficients.len()
        )));
    }
    if !(file.intercept.is_finite() && file.coefficients.iter().all(|c| c.is_finite())) {
        return Err(err("non-finite coefficient".into()));
    }
    Ok(SavedModel {
        kind: file.model,
        threshold: file.threshold,
        model: LogisticModel {
            intercept: file.intercept,
            coefficients: file.coefficients,
            basis_spec: file.basis,
            converged: file.converged,
            iterations: file.iterations,
            separation_flag: file.separation_flag,
        },
    })
}

pub fn load_model(path: &Path) -> Result<SavedModel, PipelineError> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}
