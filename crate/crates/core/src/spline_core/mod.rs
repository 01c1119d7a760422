//! Knots, interpolating splines and spline regression bases.

mod basis;
mod bspline;
mod interp;
mod knots;

pub use basis::{basis_row, BasisKind, SplineBasisSpec};
pub use bspline::{bspline_blend, BSplineBasis};
pub use interp::{
    eval_linear_interpolant, eval_piecewise, fit_natural_cubic_spline, fit_quadratic_spline,
    InterpolationData, PiecewisePolynomial,
};
pub use knots::{quantile, quantile_knots, KnotVector};

use thiserror::Error;

/// Errors raised by spline construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("sample is empty")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFinite,
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("quantile knots are not strictly increasing: {0:?}")]
    DegenerateKnots(Vec<f64>),
    #[error("knot values must be nondecreasing")]
    UnsortedKnots,
    #[error("interior knots must be strictly increasing")]
    RepeatedKnots,
    #[error("x = {x} lies outside [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("need at least {needed} data points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("abscissae must be finite and strictly increasing")]
    InvalidAbscissae,
    #[error("basis function index {index} out of range (n_functions = {n_functions})")]
    BadIndex { index: usize, n_functions: usize },
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
}
