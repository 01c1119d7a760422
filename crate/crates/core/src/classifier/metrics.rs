use serde::{Deserialize, Serialize};

use super::ClassifierError;

/// Attack (label 1) is the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn new(tp: usize, fp: usize, tn: usize, fn_: usize) -> Self {
        ConfusionMatrix { tp, fp, tn, fn_ }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn accuracy(&self) -> Result<f64, ClassifierError> {
        accuracy(self)
    }
}

/// `1` (attack) iff `p >= threshold`.
pub fn classify(probs: &[f64], threshold: f64) -> Vec<u8> {
    probs.iter().map(|&p| u8::from(p >= threshold)).collect()
}

pub fn confusion_matrix(predicted: &[u8], actual: &[u8]) -> Result<ConfusionMatrix, ClassifierError> {
    if predicted.len() != actual.len() {
        return Err(ClassifierError::ShapeError(format!(
            "{} predictions for {} labels",
            predicted.len(),
            actual.len()
        )));
    }
    let mut cm = ConfusionMatrix::default();
    for (&p, &a) in predicted.iter().zip(actual) {
        match (p, a) {
            (1, 1) => cm.tp += 1,
            (1, 0) => cm.fp += 1,
            (0, 0) => cm.tn += 1,
            (0, 1) => cm.fn_ += 1,
            (bad, _) if bad > 1 => return Err(ClassifierError::BadLabel(bad)),
            (_, bad) => return Err(ClassifierError::BadLabel(bad)),
        }
    }
    Ok(cm)
}

/// `(tp + tn) / total`
pub fn accuracy(cm: &ConfusionMatrix) -> Result<f64, ClassifierError> {
    let total = cm.total();
    if total == 0 {
        return Err(ClassifierError::EmptyData);
    }
    Ok((cm.tp + cm.tn) as f64 / total as f64)
}
