use serde::{Deserialize, Serialize};

use super::SplineError;

/// A nondecreasing sequence of breakpoints, in the units of the predictor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct KnotVector(Vec<f64>);

impl KnotVector {
    /// Builds a knot vector; values must be finite and nondecreasing.
    pub fn new(values: Vec<f64>) -> Result<Self, SplineError> {
        if values.is_empty() {
            return Err(SplineError::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SplineError::NonFinite);
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(SplineError::UnsortedKnots);
        }
        Ok(KnotVector(values))
    }

    /// Builds a knot vector whose values are strictly increasing, as
    /// required for the interior knots of a regression basis.
    pub fn strictly_increasing(values: Vec<f64>) -> Result<Self, SplineError> {
        let kv = Self::new(values)?;
        if !kv.is_strictly_increasing() {
            return Err(SplineError::RepeatedKnots);
        }
        Ok(kv)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.0[0]
    }

    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl TryFrom<Vec<f64>> for KnotVector {
    type Error = SplineError;

    fn try_from(values: Vec<f64>) -> Result<Self, Self::Error> {
        KnotVector::new(values)
    }
}

impl From<KnotVector> for Vec<f64> {
    fn from(kv: KnotVector) -> Self {
        kv.0
    }
}

fn sorted_finite(sample: &[f64]) -> Result<Vec<f64>, SplineError> {
    if sample.is_empty() {
        return Err(SplineError::EmptySample);
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(SplineError::NonFinite);
    }
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    Ok(s)
}

fn quantile_sorted(s: &[f64], p: f64) -> f64 {
    let h = (s.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    if lo + 1 >= s.len() {
        return s[s.len() - 1];
    }
    s[lo] + (h - lo as f64) * (s[lo + 1] - s[lo])
}

fn check_probability(p: f64) -> Result<(), SplineError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SplineError::BadProbability(p))
    }
}

/// Sample quantile by linear interpolation between order statistics
/// (Hyndman–Fan type 7): `h = (n-1)p`, `s[⌊h⌋] + (h-⌊h⌋)(s[⌊h⌋+1]-s[⌊h⌋])`.
pub fn quantile(sample: &[f64], p: f64) -> Result<f64, SplineError> {
    check_probability(p)?;
    let s = sorted_finite(sample)?;
    Ok(quantile_sorted(&s, p))
}

/// Places one knot at each requested sample quantile.
///
/// `probs` must be strictly increasing inside `(0, 1)`. Fails with
/// [`SplineError::DegenerateKnots`] when two quantiles coincide.
pub fn quantile_knots(sample: &[f64], probs: &[f64]) -> Result<KnotVector, SplineError> {
    if probs.is_empty() {
        return Err(SplineError::InvalidBasis("no knot probabilities".into()));
    }
    for &p in probs {
        if !(p > 0.0 && p < 1.0) {
            return Err(SplineError::BadProbability(p));
        }
    }
    if probs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SplineError::InvalidBasis(
            "knot probabilities must be strictly increasing".into(),
        ));
    }
    let s = sorted_finite(sample)?;
    let knots: Vec<f64> = probs.iter().map(|&p| quantile_sorted(&s, p)).collect();
    if knots.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SplineError::DegenerateKnots(knots));
    }
    KnotVector::new(knots)
}
