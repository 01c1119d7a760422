//! Normalized B-spline blending functions via the Cox–de Boor recursion.

use super::{KnotVector, SplineError};

/// A B-spline basis of a given order over an (extended) knot vector.
#[derive(Debug, Clone, PartialEq)]
pub struct BSplineBasis {
    order: usize,
    knots: KnotVector,
}

impl BSplineBasis {
    /// Basis over an arbitrary nondecreasing knot vector.
    pub fn new(knots: KnotVector, order: usize) -> Result<Self, SplineError> {
        if order == 0 {
            return Err(SplineError::InvalidBasis("order must be at least 1".into()));
        }
        if knots.len() <= order {
            return Err(SplineError::InvalidBasis(format!(
                "{} knots cannot carry a basis of order {order}",
                knots.len()
            )));
        }
        if knots.first() == knots.last() {
            return Err(SplineError::InvalidBasis("knot vector spans an empty interval".into()));
        }
        Ok(BSplineBasis { order, knots })
    }

    /// Clamped basis on `[lo, hi]`: each boundary repeated `order` times
    /// around the strictly increasing `interior` knots.
    pub fn clamped(interior: &[f64], lo: f64, hi: f64, order: usize) -> Result<Self, SplineError> {
        if !(lo < hi) {
            return Err(SplineError::InvalidBasis(format!("empty domain [{lo}, {hi}]")));
        }
        if interior.iter().any(|&k| !(k > lo && k < hi)) {
            return Err(SplineError::InvalidBasis(
                "interior knots must lie strictly inside the domain".into(),
            ));
        }
        let mut values = Vec::with_capacity(interior.len() + 2 * order);
        values.extend(std::iter::repeat_n(lo, order));
        values.extend_from_slice(interior);
        values.extend(std::iter::repeat_n(hi, order));
        let knots = KnotVector::new(values)?;
        if !knots.values()[order - 1..=order + interior.len()]
            .windows(2)
            .all(|w| w[0] < w[1])
        {
            return Err(SplineError::RepeatedKnots);
        }
        Self::new(knots, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn n_functions(&self) -> usize {
        self.knots.len() - self.order
    }

    /// Span `[t_mu, t_mu+1)` holding `t`, with the last nonempty span closed
    /// on the right. `None` outside `[t_0, t_last]`.
    fn span(&self, t: f64) -> Option<usize> {
        let k = self.knots.values();
        let last = k.len() - 1;
        if !(t >= k[0] && t <= k[last]) {
            return None;
        }
        if t == k[last] {
            return (0..last).rev().find(|&j| k[j] < k[j + 1]);
        }
        Some(k.partition_point(|&v| v <= t) - 1)
    }

    fn blend_in_span(&self, i: usize, order: usize, t: f64, span: usize) -> f64 {
        let k = self.knots.values();
        if order == 1 {
            return if i == span { 1.0 } else { 0.0 };
        }
        let mut value = 0.0;
        let left = k[i + order - 1] - k[i];
        if left > 0.0 {
            value += (t - k[i]) / left * self.blend_in_span(i, order - 1, t, span);
        }
        let right = k[i + order] - k[i + 1];
        if right > 0.0 {
            value += (k[i + order] - t) / right * self.blend_in_span(i + 1, order - 1, t, span);
        }
        value
    }

    /// `N_{i,order}(t)`. Terms with a zero denominator contribute zero.
    pub fn blend(&self, i: usize, order: usize, t: f64) -> Result<f64, SplineError> {
        if order == 0 || order >= self.knots.len() {
            return Err(SplineError::InvalidBasis(format!("order {order} not supported")));
        }
        let n_functions = self.knots.len() - order;
        if i >= n_functions {
            return Err(SplineError::BadIndex {
                index: i,
                n_functions,
            });
        }
        Ok(match self.span(t) {
            Some(span) => self.blend_in_span(i, order, t, span),
            None => 0.0,
        })
    }

    /// All `n_functions` values of this basis' order at `t`.
    pub fn eval_all(&self, t: f64) -> Vec<f64> {
        let n = self.n_functions();
        match self.span(t) {
            Some(span) => (0..n)
                .map(|i| self.blend_in_span(i, self.order, t, span))
                .collect(),
            None => vec![0.0; n],
        }
    }
}

/// Cox–de Boor value `N_{i,k}(t)` over the basis' knot vector.
pub fn bspline_blend(basis: &BSplineBasis, i: usize, k: usize, t: f64) -> Result<f64, SplineError> {
    basis.blend(i, k, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(knots: &[f64], order: usize) -> BSplineBasis {
        BSplineBasis::new(KnotVector::new(knots.to_vec()).unwrap(), order).unwrap()
    }

    #[test]
    fn order_one_indicators() {
        let b = basis(&[0.0, 1.0, 2.0], 1);
        assert_eq!(bspline_blend(&b, 0, 1, 0.5).unwrap(), 1.0);
        assert_eq!(bspline_blend(&b, 1, 1, 0.5).unwrap(), 0.0);
        assert_eq!(bspline_blend(&b, 0, 1, 1.0).unwrap(), 0.0);
        assert_eq!(bspline_blend(&b, 1, 1, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn hat_function_by_hand() {
        // N_{0,2}(0.5) = (0.5-0)/(1-0) * N_{0,1}(0.5) + (2-0.5)/(2-1) * N_{1,1}(0.5) = 0.5
        let b = basis(&[0.0, 1.0, 2.0], 2);
        assert_eq!(bspline_blend(&b, 0, 2, 0.5).unwrap(), 0.5);
        assert_eq!(bspline_blend(&b, 0, 2, 1.0).unwrap(), 1.0);
        assert_eq!(bspline_blend(&b, 0, 2, 1.5).unwrap(), 0.5);
    }

    #[test]
    fn bad_index() {
        let b = basis(&[0.0, 1.0, 2.0], 2);
        assert_eq!(
            bspline_blend(&b, 1, 2, 0.5),
            Err(SplineError::BadIndex {
                index: 1,
                n_functions: 1
            })
        );
        assert!(bspline_blend(&b, 2, 1, 0.5).is_err());
    }

    #[test]
    fn clamped_layout() {
        let b = BSplineBasis::clamped(&[1.0, 2.0], 0.0, 3.0, 4).unwrap();
        assert_eq!(b.knots().len(), 2 + 2 * 4);
        assert_eq!(b.n_functions(), 6);
        let left = b.eval_all(0.0);
        assert_eq!(left[0], 1.0);
        assert!(left[1..].iter().all(|&v| v == 0.0));
        let right = b.eval_all(3.0);
        assert_eq!(*right.last().unwrap(), 1.0);
        assert!(right[..5].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn clamped_rejects_bad_knots() {
        assert!(BSplineBasis::clamped(&[0.0, 2.0], 0.0, 3.0, 4).is_err());
        assert!(BSplineBasis::clamped(&[1.0, 1.0], 0.0, 3.0, 4).is_err());
        assert!(BSplineBasis::clamped(&[1.0], 2.0, 2.0, 2).is_err());
    }

    #[test]
    fn partition_local_support_nonnegativity() {
        let interior = [0.3, 1.1, 1.2, 2.5];
        for order in 2..=4 {
            let b = BSplineBasis::clamped(&interior, 0.0, 3.0, order).unwrap();
            let t_all = b.knots().values();
            for s in 0..1000 {
                let t = 3.0 * s as f64 / 999.0;
                let row = b.eval_all(t);
                let sum: f64 = row.iter().sum();
                assert!((sum - 1.0).abs() <= 1e-10, "order {order} t {t} sum {sum}");
                for (i, &v) in row.iter().enumerate() {
                    assert!(v >= 0.0);
                    if t < t_all[i] || (t >= t_all[i + order] && t < 3.0) {
                        assert_eq!(v, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn outside_knot_range_is_zero() {
        let b = basis(&[0.0, 1.0, 2.0, 3.0], 2);
        assert_eq!(b.blend(0, 2, -0.1).unwrap(), 0.0);
        assert_eq!(b.blend(1, 2, 3.1).unwrap(), 0.0);
    }
}
