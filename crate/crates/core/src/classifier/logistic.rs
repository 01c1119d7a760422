//! Binary logistic regression fitted by iteratively reweighted least squares.

use nalgebra::{DMatrix, DVector};

use super::{build_design_matrix, ClassifierError, DesignMatrix};
use crate::spline_core::SplineBasisSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Stop once the log-likelihood changes by less than this.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Diagonal jitter added to the (unit-diagonal scaled) normal equations
    /// when they are numerically singular.
    pub ridge_jitter: f64,
    /// Fitted probabilities must stay inside `(bound, 1 - bound)`.
    pub probability_bound: f64,
    pub max_step_halvings: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            tolerance: 1e-8,
            max_iterations: 50,
            ridge_jitter: 1e-8,
            probability_bound: 1e-12,
            max_step_halvings: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    pub basis_spec: Option<SplineBasisSpec>,
    pub converged: bool,
    pub iterations: usize,
    pub separation_flag: bool,
}

impl LogisticModel {
    /// Columns expected in a design matrix, intercept included.
    pub fn n_params(&self) -> usize {
        self.coefficients.len() + 1
    }

    pub fn linear_predictor(&self, row: &[f64]) -> f64 {
        self.intercept
            + row[1..]
                .iter()
                .zip(&self.coefficients)
                .map(|(x, b)| x * b)
                .sum::<f64>()
    }

    /// Probabilities at raw predictor values, expanded through the model's basis.
    pub fn predict_x(&self, x: &[f64]) -> Result<Vec<f64>, ClassifierError> {
        let dm = build_design_matrix(self.basis_spec.as_ref(), x)?;
        predict_prob(self, &dm)
    }
}

/// Standard logistic function, evaluated without overflow.
pub fn sigmoid(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + (-eta).exp())
    } else {
        let e = eta.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^eta)`
fn softplus(eta: f64) -> f64 {
    if eta > 0.0 {
        eta + (-eta).exp().ln_1p()
    } else {
        eta.exp().ln_1p()
    }
}

fn eta_at(dm: &DesignMatrix, beta: &[f64]) -> Vec<f64> {
    dm.rows()
        .map(|r| r.iter().zip(beta).map(|(x, b)| x * b).sum())
        .collect()
}

/// Bernoulli log-likelihood of parameters `beta` (intercept first).
pub fn log_likelihood(dm: &DesignMatrix, labels: &[u8], beta: &[f64]) -> f64 {
    eta_at(dm, beta)
        .iter()
        .zip(labels)
        .map(|(&eta, &y)| f64::from(y) * eta - softplus(eta))
        .sum()
}

/// Analytic gradient `Xᵀ(y - p)` of [`log_likelihood`].
pub fn log_likelihood_gradient(dm: &DesignMatrix, labels: &[u8], beta: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; dm.n_cols()];
    for ((row, eta), &y) in dm.rows().zip(eta_at(dm, beta)).zip(labels) {
        let r = f64::from(y) - sigmoid(eta);
        for (gj, xj) in g.iter_mut().zip(row) {
            *gj += r * xj;
        }
    }
    g
}

fn check_inputs(dm: &DesignMatrix, labels: &[u8]) -> Result<(), ClassifierError> {
    if labels.len() != dm.n_rows() {
        return Err(ClassifierError::ShapeError(format!(
            "{} labels for {} design rows",
            labels.len(),
            dm.n_rows()
        )));
    }
    if let Some(&bad) = labels.iter().find(|&&y| y > 1) {
        return Err(ClassifierError::BadLabel(bad));
    }
    Ok(())
}

/// Solves `H δ = g` after scaling `H` to unit diagonal. A numerically
/// singular system is retried once with `jitter·I` added.
fn newton_direction(h: &DMatrix<f64>, g: &DVector<f64>, jitter: f64) -> Option<DVector<f64>> {
    let p = h.nrows();
    let scale = DVector::from_iterator(
        p,
        h.diagonal().iter().map(|&d| if d > 0.0 { d.sqrt() } else { 1.0 }),
    );
    let scaled = DMatrix::from_fn(p, p, |i, j| h[(i, j)] / (scale[i] * scale[j]));
    let rhs = g.component_div(&scale);

    let solve = |m: DMatrix<f64>| {
        let chol = m.cholesky()?;
        let min_pivot = chol.l_dirty().diagonal().iter().fold(f64::INFINITY, |a, &b| a.min(b));
        if min_pivot * min_pivot <= 1e-12 {
            return None;
        }
        Some(chol.solve(&rhs))
    };
    let z = solve(scaled.clone())
        .or_else(|| solve(scaled + DMatrix::identity(p, p) * jitter))?;
    Some(z.component_div(&scale))
}

/// Fits by IRLS and also returns the log-likelihood of every accepted iterate
/// (starting from the all-zero parameter vector).
pub fn fit_logistic_traced(
    dm: &DesignMatrix,
    labels: &[u8],
    options: &FitOptions,
) -> Result<(LogisticModel, Vec<f64>), ClassifierError> {
    check_inputs(dm, labels)?;
    let p = dm.n_cols();
    let n = dm.n_rows();
    let x = DMatrix::from_row_iterator(n, p, dm.rows().flatten().copied());

    let mut beta = vec![0.0; p];
    let mut ll = log_likelihood(dm, labels, &beta);
    let mut trace = vec![ll];
    let mut converged = false;
    let mut separated = labels.iter().all(|&y| y == labels[0]);
    let mut iterations = 0;

    while iterations < options.max_iterations {
        iterations += 1;
        let probs: Vec<f64> = eta_at(dm, &beta).into_iter().map(sigmoid).collect();
        let resid = DVector::from_iterator(
            n,
            probs.iter().zip(labels).map(|(&pi, &y)| f64::from(y) - pi),
        );
        let w = DVector::from_iterator(n, probs.iter().map(|&pi| pi * (1.0 - pi)));
        let mut xw = x.clone();
        for (i, mut row) in xw.row_iter_mut().enumerate() {
            row *= w[i];
        }
        let hessian = x.transpose() * xw;
        let gradient = x.transpose() * resid;
        let direction = newton_direction(&hessian, &gradient, options.ridge_jitter)
            .ok_or(ClassifierError::Singular)?;

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..=options.max_step_halvings {
            let candidate: Vec<f64> = beta
                .iter()
                .zip(direction.iter())
                .map(|(b, d)| b + step * d)
                .collect();
            let cand_ll = log_likelihood(dm, labels, &candidate);
            if cand_ll >= ll {
                accepted = Some((candidate, cand_ll));
                break;
            }
            step *= 0.5;
        }
        let Some((next, next_ll)) = accepted else {
            // no ascent possible along the Newton direction: at the optimum
            converged = true;
            break;
        };

        let change = next_ll - ll;
        beta = next;
        ll = next_ll;
        trace.push(ll);

        let bound = options.probability_bound;
        if eta_at(dm, &beta)
            .into_iter()
            .map(sigmoid)
            .any(|pi| pi <= bound || pi >= 1.0 - bound)
        {
            separated = true;
            break;
        }
        if change.abs() < options.tolerance {
            converged = true;
            break;
        }
    }

    let model = LogisticModel {
        intercept: beta[0],
        coefficients: beta[1..].to_vec(),
        basis_spec: dm.basis_spec().cloned(),
        converged,
        iterations,
        separation_flag: separated,
    };
    Ok((model, trace))
}

/// Maximum-likelihood logistic fit by IRLS with the default options.
pub fn fit_logistic(dm: &DesignMatrix, labels: &[u8]) -> Result<LogisticModel, ClassifierError> {
    fit_logistic_traced(dm, labels, &FitOptions::default()).map(|(m, _)| m)
}

/// `σ(intercept + row·coefficients)` for every design row, kept strictly
/// inside `(0, 1)`.
pub fn predict_prob(model: &LogisticModel, dm: &DesignMatrix) -> Result<Vec<f64>, ClassifierError> {
    if dm.n_cols() != model.n_params() {
        return Err(ClassifierError::ShapeError(format!(
            "design has {} columns, model expects {}",
            dm.n_cols(),
            model.n_params()
        )));
    }
    Ok(dm
        .rows()
        .map(|r| sigmoid(model.linear_predictor(r)).clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0))
        .collect())
}
