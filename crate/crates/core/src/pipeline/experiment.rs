use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::report::{ExperimentReport, ModelRow};
use super::{split_train_test, PipelineError};
use crate::classifier::{
    build_design_matrix, classify, confusion_matrix, fit_logistic, predict_prob, LogisticModel,
};
use crate::spline_core::{quantile_knots, BasisKind, KnotVector, SplineBasisSpec};
use crate::vanet_sim::{generate_dataset, read_csv_path, write_csv, ScenarioConfig, TrafficRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Logistic,
    LinearSpline,
    QuadraticSpline,
    CubicSpline,
    BSpline,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Logistic,
        ModelKind::LinearSpline,
        ModelKind::QuadraticSpline,
        ModelKind::CubicSpline,
        ModelKind::BSpline,
    ];

    /// Short CLI / CSV token.
    pub fn token(self) -> &'static str {
        match self {
            ModelKind::Logistic => "logistic",
            ModelKind::LinearSpline => "linear",
            ModelKind::QuadraticSpline => "quadratic",
            ModelKind::CubicSpline => "cubic",
            ModelKind::BSpline => "bspline",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            ModelKind::Logistic => "Logistic Regression",
            ModelKind::LinearSpline => "Linear Spline",
            ModelKind::QuadraticSpline => "Quadratic Spline",
            ModelKind::CubicSpline => "Cubic Spline",
            ModelKind::BSpline => "B-Spline",
        }
    }

    /// Basis for this model; `None` is the raw-delay logistic baseline.
    pub fn basis_spec(
        self,
        knots: &KnotVector,
        domain: (f64, f64),
        bspline_degree: u8,
    ) -> Result<Option<SplineBasisSpec>, PipelineError> {
        let (kind, degree) = match self {
            ModelKind::Logistic => return Ok(None),
            ModelKind::LinearSpline => (BasisKind::TruncatedPower, 1),
            ModelKind::QuadraticSpline => (BasisKind::TruncatedPower, 2),
            ModelKind::CubicSpline => (BasisKind::TruncatedPower, 3),
            ModelKind::BSpline => (BasisKind::BSpline, bspline_degree),
        };
        Ok(Some(SplineBasisSpec::new(kind, degree, knots.clone(), domain)?))
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.token() == s)
            .ok_or_else(|| format!("unknown model {s:?} (expected logistic, linear, quadratic, cubic or bspline)"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataSource {
    Csv(PathBuf),
    Scenario(ScenarioConfig),
}

/// Which congestion regime to keep before splitting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CongestionFilter {
    #[default]
    All,
    Congested,
    Uncongested,
}

impl CongestionFilter {
    fn keep(self, r: &TrafficRecord) -> bool {
        match self {
            CongestionFilter::All => true,
            CongestionFilter::Congested => r.congested,
            CongestionFilter::Uncongested => !r.congested,
        }
    }
}

impl FromStr for CongestionFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(CongestionFilter::All),
            "congested" => Ok(CongestionFilter::Congested),
            "uncongested" => Ok(CongestionFilter::Uncongested),
            other => Err(format!("unknown congestion filter {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub data: DataSource,
    pub split_ratio: f64,
    pub split_seed: u64,
    pub knot_probs: Vec<f64>,
    pub models: Vec<ModelKind>,
    pub threshold: f64,
    pub bspline_degree: u8,
    #[serde(default)]
    pub congestion: CongestionFilter,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            data: DataSource::Scenario(ScenarioConfig::default()),
            split_ratio: 0.8,
            split_seed: 42,
            knot_probs: vec![0.25, 0.5, 0.75],
            models: ModelKind::ALL.to_vec(),
            threshold: 0.5,
            bspline_degree: 3,
            congestion: CongestionFilter::All,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |m: String| Err(PipelineError::Config(m));
        if !(self.split_ratio > 0.0 && self.split_ratio < 1.0) {
            return bad(format!("split_ratio {} not in (0, 1)", self.split_ratio));
        }
        if self.knot_probs.is_empty()
            || self.knot_probs.iter().any(|&p| !(p > 0.0 && p < 1.0))
            || self.knot_probs.windows(2).any(|w| w[1] <= w[0])
        {
            return bad(format!(
                "knot_probs {:?} must be strictly increasing inside (0, 1)",
                self.knot_probs
            ));
        }
        if self.models.is_empty() {
            return bad("no models requested".into());
        }
        let mut seen = self.models.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.models.len() {
            return bad("duplicate model in model list".into());
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return bad(format!("threshold {} not in (0, 1)", self.threshold));
        }
        if !(1..=3).contains(&self.bspline_degree) {
            return bad(format!("bspline_degree {} not in 1..=3", self.bspline_degree));
        }
        Ok(())
    }

    pub fn scenario_seed(&self) -> Option<u64> {
        match &self.data {
            DataSource::Scenario(s) => Some(s.seed),
            DataSource::Csv(_) => None,
        }
    }

    pub fn load_records(&self) -> Result<Vec<TrafficRecord>, PipelineError> {
        Ok(match &self.data {
            DataSource::Csv(path) => read_csv_path(path)?,
            DataSource::Scenario(s) => generate_dataset(s)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub kind: ModelKind,
    pub model: LogisticModel,
}

/// Everything a run produces: the report plus the fitted models it scored.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRun {
    pub report: ExperimentReport,
    pub models: Vec<TrainedModel>,
    pub knots: KnotVector,
    /// Domain of the B-spline basis (training range widened 1% per side).
    pub domain: (f64, f64),
}

fn digest(config: &ExperimentConfig, train: &[TrafficRecord], test: &[TrafficRecord]) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(config).expect("config serializes"));
    for part in [train, test] {
        let mut buf = Vec::new();
        write_csv(part, &mut buf).expect("in-memory write");
        h.update(&buf);
    }
    hex::encode(h.finalize())
}

#[allow(clippy::too_many_arguments)]
fn fit_one(
    kind: ModelKind,
    config: &ExperimentConfig,
    knots: &KnotVector,
    domain: (f64, f64),
    train_x: &[f64],
    train_y: &[u8],
    test_x: &[f64],
    test_y: &[u8],
) -> Result<(TrainedModel, ModelRow, usize), PipelineError> {
    let spec = kind.basis_spec(knots, domain, config.bspline_degree)?;
    let dm = build_design_matrix(spec.as_ref(), train_x)?;
    let model = fit_logistic(&dm, train_y)?;

    let mut clamped = 0;
    let scored_x: Vec<f64> = match &spec {
        Some(s) if s.kind() == BasisKind::BSpline => test_x
            .iter()
            .map(|&x| {
                let c = x.clamp(domain.0, domain.1);
                if c != x {
                    clamped += 1;
                }
                c
            })
            .collect(),
        _ => test_x.to_vec(),
    };
    let test_dm = build_design_matrix(spec.as_ref(), &scored_x)?;
    let probs = predict_prob(&model, &test_dm)?;
    let cm = confusion_matrix(&classify(&probs, config.threshold), test_y)?;
    let row = ModelRow {
        model: kind,
        confusion: cm,
        accuracy: cm.accuracy()?,
        converged: model.converged,
        separation_flag: model.separation_flag,
        iterations: model.iterations,
    };
    Ok((TrainedModel { kind, model }, row, clamped))
}

/// Fits every requested model on `train` and scores it on `test`. Knots and
/// the B-spline domain come from the training delays only.
pub fn run_on_split(
    config: &ExperimentConfig,
    train: &[TrafficRecord],
    test: &[TrafficRecord],
) -> Result<ExperimentRun, PipelineError> {
    config.validate()?;
    if train.is_empty() || test.is_empty() {
        return Err(PipelineError::SplitError("empty train or test set".into()));
    }
    let train_x: Vec<f64> = train.iter().map(|r| r.packet_delay_ms).collect();
    let train_y: Vec<u8> = train.iter().map(TrafficRecord::label).collect();
    let test_x: Vec<f64> = test.iter().map(|r| r.packet_delay_ms).collect();
    let test_y: Vec<u8> = test.iter().map(TrafficRecord::label).collect();

    let knots = quantile_knots(&train_x, &config.knot_probs)?;
    let lo = train_x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = train_x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.01 * (hi - lo);
    let domain = (lo - pad, hi + pad);

    // Independent fits; joined in the requested order.
    let results: Vec<Result<_, PipelineError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .models
            .iter()
            .map(|&kind| {
                let (knots, train_x, train_y, test_x, test_y) =
                    (&knots, &train_x, &train_y, &test_x, &test_y);
                scope.spawn(move || {
                    fit_one(kind, config, knots, domain, train_x, train_y, test_x, test_y)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("model fit panicked"))
            .collect()
    });

    let mut models = Vec::with_capacity(results.len());
    let mut rows = Vec::with_capacity(results.len());
    let mut clamped_test_points = 0;
    for r in results {
        let (m, row, clamped) = r?;
        models.push(m);
        rows.push(row);
        clamped_test_points += clamped;
    }

    let report = ExperimentReport {
        rows,
        n_train: train.len(),
        n_test: test.len(),
        knots: knots.values().to_vec(),
        scenario_seed: config.scenario_seed(),
        split_seed: config.split_seed,
        config_digest: digest(config, train, test),
        clamped_test_points,
    };
    Ok(ExperimentRun {
        report,
        models,
        knots,
        domain,
    })
}

/// Filters by congestion, splits, and runs every model.
pub fn run_on_records(
    config: &ExperimentConfig,
    records: &[TrafficRecord],
) -> Result<ExperimentRun, PipelineError> {
    config.validate()?;
    let kept: Vec<TrafficRecord> = records
        .iter()
        .filter(|r| config.congestion.keep(r))
        .copied()
        .collect();
    let (train, test) = split_train_test(&kept, config.split_ratio, config.split_seed)?;
    run_on_split(config, &train, &test)
}

/// Loads or simulates the data, then runs the full experiment.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentRun, PipelineError> {
    config.validate()?;
    let records = config.load_records()?;
    run_on_records(config, &records)
}
