use crate::spline_core::SplineBasisSpec;

use super::ClassifierError;

/// Row-major design matrix with a leading intercept column.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<f64>,
    basis_spec: Option<SplineBasisSpec>,
}

impl DesignMatrix {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n_cols)
    }

    /// `None` for the plain logistic baseline on raw packet delay.
    pub fn basis_spec(&self) -> Option<&SplineBasisSpec> {
        self.basis_spec.as_ref()
    }
}

/// Rows `(1, basis_row(spec, x))`, or `(1, x)` when `spec` is `None`.
pub fn build_design_matrix(
    spec: Option<&SplineBasisSpec>,
    x: &[f64],
) -> Result<DesignMatrix, ClassifierError> {
    if x.is_empty() {
        return Err(ClassifierError::EmptyData);
    }
    let n_cols = 1 + spec.map_or(1, SplineBasisSpec::dimension);
    let mut entries = Vec::with_capacity(n_cols * x.len());
    for (row, &xi) in x.iter().enumerate() {
        entries.push(1.0);
        match spec {
            None => {
                if !xi.is_finite() {
                    return Err(ClassifierError::OutOfDomain {
                        row,
                        source: crate::spline_core::SplineError::NonFinite,
                    });
                }
                entries.push(xi);
            }
            Some(s) => {
                let r = s
                    .row(xi)
                    .map_err(|source| ClassifierError::OutOfDomain { row, source })?;
                entries.extend(r);
            }
        }
    }
    Ok(DesignMatrix {
        n_rows: x.len(),
        n_cols,
        entries,
        basis_spec: spec.cloned(),
    })
}
