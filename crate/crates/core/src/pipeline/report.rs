use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ModelKind;
use crate::classifier::ConfusionMatrix;

/// Footer printed under every text report.
pub const ACCURACY_NOTE: &str = "Accuracy is (TP + TN) / N computed from the counts in each row and \
rounded to 2 decimals; rows with 118 of 120 correct therefore read 98.33%, not 98.30%.";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRow {
    pub model: ModelKind,
    pub confusion: ConfusionMatrix,
    pub accuracy: f64,
    pub converged: bool,
    pub separation_flag: bool,
    pub iterations: usize,
}

impl ModelRow {
    /// Accuracy as a percentage string with 2 decimals, from the counts.
    pub fn accuracy_percent(&self) -> String {
        let cm = &self.confusion;
        let n = cm.total();
        format!("{:.2}%", 100.0 * (cm.tp + cm.tn) as f64 / n as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rows: Vec<ModelRow>,
    pub n_train: usize,
    pub n_test: usize,
    /// Interior knots in milliseconds of packet delay.
    pub knots: Vec<f64>,
    pub scenario_seed: Option<u64>,
    pub split_seed: u64,
    pub config_digest: String,
    /// Test delays moved onto the B-spline domain edge before scoring.
    pub clamped_test_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_text(report: &ExperimentReport) -> String {
    let mut s = String::new();
    let knots: Vec<String> = report.knots.iter().map(|k| format!("{k:.3}")).collect();
    writeln!(s, "Confusion matrix analysis, N = {} (test), n_train = {}", report.n_test, report.n_train).unwrap();
    writeln!(s, "Knots (packet delay, ms): {}", knots.join(", ")).unwrap();
    writeln!(s).unwrap();
    writeln!(
        s,
        "{:<20} {:>13} {:>14} {:>13} {:>14} {:>19} {:>9} {:>9}",
        "Model",
        "True Positive",
        "False Positive",
        "True Negative",
        "False Negative",
        "Prediction Accuracy",
        "Converged",
        "Separated"
    )
    .unwrap();
    for r in &report.rows {
        let cm = &r.confusion;
        writeln!(
            s,
            "{:<20} {:>13} {:>14} {:>13} {:>14} {:>19} {:>9} {:>9}",
            r.model.display_name(),
            cm.tp,
            cm.fp,
            cm.tn,
            cm.fn_,
            r.accuracy_percent(),
            yes_no(r.converged),
            yes_no(r.separation_flag)
        )
        .unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "Note: {ACCURACY_NOTE}").unwrap();
    let scenario = report
        .scenario_seed
        .map_or_else(|| "n/a (csv input)".to_string(), |v| v.to_string());
    writeln!(s, "Scenario seed: {scenario}; split seed: {}", report.split_seed).unwrap();
    writeln!(s, "B-spline test points clamped to domain: {}", report.clamped_test_points).unwrap();
    writeln!(s, "Config digest: {}", report.config_digest).unwrap();
    s
}

fn render_csv(report: &ExperimentReport) -> String {
    let mut s = String::from(
        "model,tp,fp,tn,fn,n,accuracy,accuracy_percent,converged,separation_flag,iterations\n",
    );
    for r in &report.rows {
        let cm = &r.confusion;
        writeln!(
            s,
            "{},{},{},{},{},{},{:.16e},{},{},{},{}",
            r.model.token(),
            cm.tp,
            cm.fp,
            cm.tn,
            cm.fn_,
            cm.total(),
            r.accuracy,
            r.accuracy_percent().trim_end_matches('%'),
            u8::from(r.converged),
            u8::from(r.separation_flag),
            r.iterations
        )
        .unwrap();
    }
    s
}

/// Renders a report in the requested format.
pub fn emit_report(report: &ExperimentReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Csv => render_csv(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(model: ModelKind, tp: usize, fp: usize, tn: usize, fn_: usize) -> ModelRow {
        let confusion = ConfusionMatrix::new(tp, fp, tn, fn_);
        ModelRow {
            model,
            confusion,
            accuracy: confusion.accuracy().unwrap(),
            converged: true,
            separation_flag: false,
            iterations: 7,
        }
    }

    fn report(rows: Vec<ModelRow>) -> ExperimentReport {
        ExperimentReport {
            rows,
            n_train: 480,
            n_test: 120,
            knots: vec![1.0, 2.0, 3.0],
            scenario_seed: Some(42),
            split_seed: 42,
            config_digest: "abc".into(),
            clamped_test_points: 0,
        }
    }

    #[test]
    fn renders_percentages_from_counts() {
        assert_eq!(row(ModelKind::Logistic, 61, 1, 58, 0).accuracy_percent(), "99.17%");
        assert_eq!(row(ModelKind::LinearSpline, 59, 3, 56, 2).accuracy_percent(), "95.83%");
        assert_eq!(row(ModelKind::QuadraticSpline, 59, 1, 59, 1).accuracy_percent(), "98.33%");
    }

    #[test]
    fn text_has_rows_and_footnote() {
        let r = report(vec![
            row(ModelKind::Logistic, 61, 1, 58, 0),
            row(ModelKind::QuadraticSpline, 59, 1, 59, 1),
        ]);
        let text = emit_report(&r, ReportFormat::Text);
        assert!(text.contains("Logistic Regression"));
        assert!(text.contains("99.17%"));
        assert!(text.contains("98.33%"));
        assert!(text.contains("not 98.30%"));
        let csv = emit_report(&r, ReportFormat::Csv);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("logistic,61,1,58,0,120,"));
    }
}
