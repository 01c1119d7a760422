//! Spline-basis intrusion detection over packet-delay features.
//!
//! The crate is split into four layers:
//!
//! * [`spline_core`] — knot vectors, quantiles, interpolating splines
//!   (linear, quadratic, natural cubic) and regression bases (truncated
//!   power, clamped B-spline).
//! * [`classifier`] — design matrices, logistic regression fitted by IRLS,
//!   thresholding and confusion-matrix metrics.
//! * [`vanet_sim`] — a seeded generator of labelled synthetic VANET traffic
//!   and its CSV format.
//! * [`pipeline`] — train/test split, the five-model experiment, reports,
//!   prediction curves and model persistence.

pub mod classifier;
pub mod pipeline;
pub mod spline_core;
pub mod vanet_sim;
