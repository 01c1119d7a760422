use std::fmt::Write as _;

use super::{ExperimentRun, ModelKind, PipelineError};

/// Predicted attack probability of each fitted model over a delay grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    pub config_digest: String,
    pub models: Vec<ModelKind>,
    pub delay_ms: Vec<f64>,
    /// `probabilities[m][i]` for model `m` at grid point `i`.
    pub probabilities: Vec<Vec<f64>>,
}

impl CurveTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("delay_ms");
        for m in &self.models {
            s.push(',');
            s.push_str(m.token());
        }
        s.push('\n');
        for (i, x) in self.delay_ms.iter().enumerate() {
            write!(s, "{x:.16e}").unwrap();
            for col in &self.probabilities {
                write!(s, ",{:.16e}", col[i]).unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// Evaluates the run's models on `grid_points` evenly spaced delays across
/// the B-spline domain.
pub fn emit_curves(run: &ExperimentRun, grid_points: usize) -> Result<CurveTable, PipelineError> {
    if grid_points < 2 {
        return Err(PipelineError::Config("grid needs at least 2 points".into()));
    }
    let (lo, hi) = run.domain;
    let step = (hi - lo) / (grid_points - 1) as f64;
    let mut delay_ms: Vec<f64> = (0..grid_points).map(|i| lo + step * i as f64).collect();
    delay_ms[grid_points - 1] = hi;

    let probabilities = run
        .models
        .iter()
        .map(|m| m.model.predict_x(&delay_ms))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CurveTable {
        config_digest: run.report.config_digest.clone(),
        models: run.models.iter().map(|m| m.kind).collect(),
        delay_ms,
        probabilities,
    })
}
