use serde::{Deserialize, Serialize};

use super::{BSplineBasis, KnotVector, SplineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// `x, …, x^d, (x-κ₁)₊^d, …, (x-κ_K)₊^d`
    TruncatedPower,
    /// Clamped B-spline of order `d + 1` over the domain.
    BSpline,
}

/// Declarative description of a spline regression basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct SplineBasisSpec {
    kind: BasisKind,
    degree: u8,
    interior_knots: KnotVector,
    domain: (f64, f64),
    #[serde(skip)]
    bspline: Option<BSplineBasis>,
}

#[derive(Deserialize)]
struct RawSpec {
    kind: BasisKind,
    degree: u8,
    interior_knots: KnotVector,
    domain: (f64, f64),
}

impl SplineBasisSpec {
    pub fn new(
        kind: BasisKind,
        degree: u8,
        interior_knots: KnotVector,
        domain: (f64, f64),
    ) -> Result<Self, SplineError> {
        if !(1..=3).contains(&degree) {
            return Err(SplineError::InvalidBasis(format!("degree {degree} not in 1..=3")));
        }
        if !interior_knots.is_strictly_increasing() {
            return Err(SplineError::RepeatedKnots);
        }
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(SplineError::InvalidBasis(format!("bad domain [{lo}, {hi}]")));
        }
        if interior_knots.values().iter().any(|&k| !(k > lo && k < hi)) {
            return Err(SplineError::InvalidBasis(
                "interior knots must lie strictly inside the domain".into(),
            ));
        }
        let bspline = match kind {
            BasisKind::BSpline => Some(BSplineBasis::clamped(
                interior_knots.values(),
                lo,
                hi,
                degree as usize + 1,
            )?),
            BasisKind::TruncatedPower => None,
        };
        Ok(SplineBasisSpec {
            kind,
            degree,
            interior_knots,
            domain,
            bspline,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn interior_knots(&self) -> &KnotVector {
        &self.interior_knots
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Number of basis columns, not counting an intercept.
    pub fn dimension(&self) -> usize {
        let d = self.degree as usize;
        let k = self.interior_knots.len();
        match self.kind {
            BasisKind::TruncatedPower => d + k,
            BasisKind::BSpline => k + d + 1,
        }
    }

    /// Whether `x` may be passed to [`basis_row`].
    pub fn contains(&self, x: f64) -> bool {
        match self.kind {
            BasisKind::TruncatedPower => x.is_finite(),
            BasisKind::BSpline => x >= self.domain.0 && x <= self.domain.1,
        }
    }

    pub fn row(&self, x: f64) -> Result<Vec<f64>, SplineError> {
        let (lo, hi) = self.domain;
        if !x.is_finite() {
            return Err(SplineError::OutOfDomain { x, lo, hi });
        }
        match &self.bspline {
            None => {
                let d = self.degree as i32;
                let mut row: Vec<f64> = (1..=d).map(|p| x.powi(p)).collect();
                row.extend(
                    self.interior_knots
                        .values()
                        .iter()
                        .map(|&k| (x - k).max(0.0).powi(d)),
                );
                Ok(row)
            }
            Some(b) => {
                if !(x >= lo && x <= hi) {
                    return Err(SplineError::OutOfDomain { x, lo, hi });
                }
                Ok(b.eval_all(x))
            }
        }
    }
}

impl TryFrom<RawSpec> for SplineBasisSpec {
    type Error = SplineError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        SplineBasisSpec::new(raw.kind, raw.degree, raw.interior_knots, raw.domain)
    }
}

/// One row of basis values at `x` (no intercept).
pub fn basis_row(spec: &SplineBasisSpec, x: f64) -> Result<Vec<f64>, SplineError> {
    spec.row(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};
    use proptest::prelude::*;

    fn knots(v: &[f64]) -> KnotVector {
        KnotVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn truncated_power_rows() {
        let s = SplineBasisSpec::new(BasisKind::TruncatedPower, 1, knots(&[2.0, 4.0]), (0.0, 10.0))
            .unwrap();
        assert_eq!(basis_row(&s, 3.0).unwrap(), vec![3.0, 1.0, 0.0]);
        assert_eq!(s.dimension(), 3);
        // unrestricted domain
        assert_eq!(basis_row(&s, 20.0).unwrap(), vec![20.0, 18.0, 16.0]);

        let c = SplineBasisSpec::new(BasisKind::TruncatedPower, 3, knots(&[1.0]), (0.0, 5.0)).unwrap();
        assert_eq!(basis_row(&c, 2.0).unwrap(), vec![2.0, 4.0, 8.0, 1.0]);
    }

    #[test]
    fn bspline_rows() {
        let s = SplineBasisSpec::new(BasisKind::BSpline, 3, knots(&[0.75, 1.5, 2.25]), (0.0, 3.0))
            .unwrap();
        assert_eq!(s.dimension(), 7);
        let left = basis_row(&s, 0.0).unwrap();
        assert_eq!(left, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let right = basis_row(&s, 3.0).unwrap();
        assert!((right.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        assert_eq!(right[6], 1.0);
        assert!(matches!(
            basis_row(&s, 3.0001),
            Err(SplineError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(SplineBasisSpec::new(BasisKind::BSpline, 4, knots(&[1.0]), (0.0, 2.0)).is_err());
        assert!(SplineBasisSpec::new(BasisKind::BSpline, 2, knots(&[2.0]), (0.0, 2.0)).is_err());
        assert!(SplineBasisSpec::new(BasisKind::BSpline, 2, knots(&[1.0, 1.0]), (0.0, 2.0)).is_err());
    }

    #[test]
    fn serde_round_trip_rebuilds_basis() {
        let s = SplineBasisSpec::new(BasisKind::BSpline, 2, knots(&[1.0, 2.0]), (0.0, 3.0)).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: SplineBasisSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.row(1.3).unwrap(), s.row(1.3).unwrap());
    }

    /// Least-squares fit of `target` on `(1, basis_row)` at `xs`, evaluated at `eval`.
    fn ls_reproduce(spec: &SplineBasisSpec, xs: &[f64], target: &[f64], eval: &[f64]) -> Vec<f64> {
        let p = spec.dimension() + 1;
        let row = |x: f64| {
            let mut r = vec![1.0];
            r.extend(spec.row(x).unwrap());
            r
        };
        let a = DMatrix::from_fn(xs.len(), p, |i, j| row(xs[i])[j]);
        let svd = a.svd(true, true);
        let coef = svd.solve(&DVector::from_column_slice(target), 1e-12).unwrap();
        eval.iter()
            .map(|&x| row(x).iter().zip(coef.iter()).map(|(r, c)| r * c).sum())
            .collect()
    }

    proptest! {
        #[test]
        fn partition_of_unity(
            raw in prop::collection::btree_set(1u32..999, 1..6),
            order in 2usize..=4,
            t in 0.0f64..=1.0,
        ) {
            let interior: Vec<f64> = raw.into_iter().map(|v| v as f64 / 1000.0).collect();
            let s = SplineBasisSpec::new(BasisKind::BSpline, (order - 1) as u8, knots(&interior), (0.0, 1.0)).unwrap();
            let row = s.row(t).unwrap();
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            prop_assert!(row.iter().all(|&v| v >= 0.0));
        }

        #[test]
        fn degree_one_span_equivalence(
            values in prop::collection::vec(-3.0f64..3.0, 5),
        ) {
            let interior = [2.0, 4.5, 7.0];
            let nodes = [0.0, 2.0, 4.5, 7.0, 10.0];
            let data = crate::spline_core::InterpolationData::from_columns(nodes.to_vec(), values).unwrap();
            let xs: Vec<f64> = (0..100).map(|i| 10.0 * i as f64 / 99.0).collect();
            let target: Vec<f64> = xs
                .iter()
                .map(|&x| crate::spline_core::eval_linear_interpolant(&data, x).unwrap())
                .collect();
            for kind in [BasisKind::TruncatedPower, BasisKind::BSpline] {
                let s = SplineBasisSpec::new(kind, 1, knots(&interior), (0.0, 10.0)).unwrap();
                let fitted = ls_reproduce(&s, &xs, &target, &xs);
                for (f, t) in fitted.iter().zip(&target) {
                    prop_assert!((f - t).abs() < 1e-8, "{:?}: {} vs {}", kind, f, t);
                }
            }
        }
    }
}
