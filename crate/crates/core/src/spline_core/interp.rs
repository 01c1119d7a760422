//! Interpolating splines through `(x, y)` data.
//!
//! Fitted splines are stored as [`PiecewisePolynomial`]s whose rows hold the
//! coefficients of `a + b·x + c·x² + d·x³` in the global variable `x`.

use super::{KnotVector, SplineError};

/// Interpolation nodes with strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationData {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl InterpolationData {
    pub fn new(points: &[(f64, f64)]) -> Result<Self, SplineError> {
        let (xs, ys) = points.iter().copied().unzip();
        Self::from_columns(xs, ys)
    }

    pub fn from_columns(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, SplineError> {
        if xs.len() != ys.len() {
            return Err(SplineError::InvalidAbscissae);
        }
        if xs.len() < 2 {
            return Err(SplineError::InsufficientData {
                needed: 2,
                got: xs.len(),
            });
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(SplineError::NonFinite);
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SplineError::InvalidAbscissae);
        }
        Ok(InterpolationData { xs, ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Index `i` of the interval `[xs[i], xs[i+1]]` holding `x`; the last
/// interval is closed on the right.
fn locate(xs: &[f64], x: f64) -> Result<usize, SplineError> {
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    if !(x >= lo && x <= hi) {
        return Err(SplineError::OutOfDomain { x, lo, hi });
    }
    let i = xs.partition_point(|&b| b <= x);
    Ok(i.saturating_sub(1).min(xs.len() - 2))
}

/// Piecewise-linear interpolant through `data`, evaluated at `x`.
pub fn eval_linear_interpolant(data: &InterpolationData, x: f64) -> Result<f64, SplineError> {
    let i = locate(&data.xs, x)?;
    let (x0, x1) = (data.xs[i], data.xs[i + 1]);
    let (y0, y1) = (data.ys[i], data.ys[i + 1]);
    if x == x1 {
        return Ok(y1);
    }
    Ok(y0 + (x - x0) * (y1 - y0) / (x1 - x0))
}

/// Per-interval polynomial coefficient table.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: KnotVector,
    coefficients: Vec<[f64; 4]>,
    degree: u8,
}

impl PiecewisePolynomial {
    pub fn new(
        breakpoints: KnotVector,
        coefficients: Vec<[f64; 4]>,
        degree: u8,
    ) -> Result<Self, SplineError> {
        if !(1..=3).contains(&degree) {
            return Err(SplineError::InvalidBasis(format!(
                "piecewise degree {degree} not in 1..=3"
            )));
        }
        if breakpoints.len() < 2 || !breakpoints.is_strictly_increasing() {
            return Err(SplineError::InvalidAbscissae);
        }
        if coefficients.len() != breakpoints.len() - 1 {
            return Err(SplineError::InvalidBasis(format!(
                "{} coefficient rows for {} breakpoints",
                coefficients.len(),
                breakpoints.len()
            )));
        }
        Ok(PiecewisePolynomial {
            breakpoints,
            coefficients,
            degree,
        })
    }

    pub fn breakpoints(&self) -> &KnotVector {
        &self.breakpoints
    }

    pub fn coefficients(&self) -> &[[f64; 4]] {
        &self.coefficients
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn n_pieces(&self) -> usize {
        self.coefficients.len()
    }

    /// Value of piece `piece` at `x`; `x` need not lie in that piece.
    pub fn eval_piece(&self, piece: usize, x: f64) -> f64 {
        let [a, b, c, d] = self.coefficients[piece];
        a + x * (b + x * (c + x * d))
    }

    /// `order`-th derivative (0..=3) of piece `piece` at `x`.
    pub fn derivative_piece(&self, piece: usize, order: u8, x: f64) -> f64 {
        let [a, b, c, d] = self.coefficients[piece];
        match order {
            0 => a + x * (b + x * (c + x * d)),
            1 => b + x * (2.0 * c + 3.0 * d * x),
            2 => 2.0 * c + 6.0 * d * x,
            3 => 6.0 * d,
            _ => 0.0,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, SplineError> {
        let i = locate(self.breakpoints.values(), x)?;
        Ok(self.eval_piece(i, x))
    }

    /// Largest jump of the `order`-th derivative across interior breakpoints.
    pub fn max_jump(&self, order: u8) -> f64 {
        let bp = self.breakpoints.values();
        (1..self.n_pieces())
            .map(|i| {
                let x = bp[i];
                (self.derivative_piece(i - 1, order, x) - self.derivative_piece(i, order, x)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Evaluates a piecewise polynomial; the last breakpoint belongs to the
/// final piece.
pub fn eval_piecewise(poly: &PiecewisePolynomial, x: f64) -> Result<f64, SplineError> {
    poly.eval(x)
}

fn require_points(data: &InterpolationData, needed: usize) -> Result<(), SplineError> {
    if data.len() < needed {
        return Err(SplineError::InsufficientData {
            needed,
            got: data.len(),
        });
    }
    Ok(())
}

/// `c0 + c1 (x-x0) + c2 (x-x0)² + c3 (x-x0)³` re-expanded in powers of `x`.
fn expand_local(x0: f64, local: [f64; 4]) -> [f64; 4] {
    let [c0, c1, c2, c3] = local;
    [
        c0 - c1 * x0 + c2 * x0 * x0 - c3 * x0 * x0 * x0,
        c1 - 2.0 * c2 * x0 + 3.0 * c3 * x0 * x0,
        c2 - 3.0 * c3 * x0,
        c3,
    ]
}

/// C¹ quadratic interpolating spline whose final piece is linear (`c = 0`).
///
/// Writing each piece as `y[i] + s[i](x-x[i]) + q[i](x-x[i])²`, the right-end
/// interpolation and slope matching give `s[i+1] = 2Δ[i] - s[i]` with `Δ` the
/// secant slope. The closure `q[n-1] = 0` fixes `s[n-1] = Δ[n-1]`, after which
/// the slopes are recovered right to left.
pub fn fit_quadratic_spline(data: &InterpolationData) -> Result<PiecewisePolynomial, SplineError> {
    require_points(data, 3)?;
    let (xs, ys) = (data.xs(), data.ys());
    let n = xs.len() - 1;
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let secant: Vec<f64> = (0..n).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();

    let mut slope = vec![0.0; n];
    slope[n - 1] = secant[n - 1];
    for i in (0..n - 1).rev() {
        slope[i] = 2.0 * secant[i] - slope[i + 1];
    }

    let coefficients = (0..n)
        .map(|i| {
            let q = if i == n - 1 {
                0.0
            } else {
                (secant[i] - slope[i]) / h[i]
            };
            expand_local(xs[i], [ys[i], slope[i], q, 0.0])
        })
        .collect();
    PiecewisePolynomial::new(KnotVector::new(xs.to_vec())?, coefficients, 2)
}

/// Solves a tridiagonal system by the Thomas algorithm. `sub[0]` and
/// `sup[n-1]` are ignored.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / m } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}

/// Natural cubic interpolating spline (`S'' = 0` at both ends), computed from
/// the tridiagonal system in the second-derivative moments `M[i]`.
pub fn fit_natural_cubic_spline(
    data: &InterpolationData,
) -> Result<PiecewisePolynomial, SplineError> {
    require_points(data, 3)?;
    let (xs, ys) = (data.xs(), data.ys());
    let n = xs.len() - 1;
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();

    // Interior equations: h[i-1] M[i-1] + 2(h[i-1]+h[i]) M[i] + h[i] M[i+1]
    //   = 6 ((y[i+1]-y[i])/h[i] - (y[i]-y[i-1])/h[i-1]),  i = 1..n-1.
    let m = n - 1;
    let mut sub = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut sup = vec![0.0; m];
    let mut rhs = vec![0.0; m];
    for r in 0..m {
        let i = r + 1;
        sub[r] = h[i - 1];
        diag[r] = 2.0 * (h[i - 1] + h[i]);
        sup[r] = h[i];
        rhs[r] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
    }
    let interior = solve_tridiagonal(&sub, &diag, &sup, &rhs);
    let mut moments = Vec::with_capacity(n + 1);
    moments.push(0.0);
    moments.extend(interior);
    moments.push(0.0);

    let coefficients = (0..n)
        .map(|i| {
            let (m0, m1, hi) = (moments[i], moments[i + 1], h[i]);
            let b = (ys[i + 1] - ys[i]) / hi - hi * (2.0 * m0 + m1) / 6.0;
            expand_local(xs[i], [ys[i], b, m0 / 2.0, (m1 - m0) / (6.0 * hi)])
        })
        .collect();
    PiecewisePolynomial::new(KnotVector::new(xs.to_vec())?, coefficients, 3)
}
