//! The blending operator `Q + R - RQ`: quasi-interpolation plus the local
//! interpolation correction applied to its residual. Inherits polynomial
//! reproduction from the first factor and the value/endpoint-derivative
//! interpolation conditions from the second, and stays local.

use crate::error::{Error, Result};
use crate::grid::SamplingGrid;
use crate::localinterp::{build_local, LocalOperator};
use crate::quasi::{build_quasi, QuasiOperator};
use crate::scalar::{factorial, Scalar};
use crate::spline::{find_span, merge_knots_max, span_all_derivs, DualFunctional, SplineFunction};

/// Where the endpoint derivative values came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSource {
    Exact,
    DividedDifference,
}

/// Sample values plus endpoint derivatives of orders `1..m-1`, the data every
/// operator consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteData<T> {
    pub values: Vec<T>,
    pub derivs_a: Vec<T>,
    pub derivs_b: Vec<T>,
    pub source: DerivativeSource,
}

impl<T: Scalar> HermiteData<T> {
    pub fn new(values: Vec<T>, derivs_a: Vec<T>, derivs_b: Vec<T>) -> Self {
        Self {
            values,
            derivs_a,
            derivs_b,
            source: DerivativeSource::Exact,
        }
    }

    /// Endpoint derivatives estimated from the samples themselves by divided
    /// differences.
    pub fn with_divided_differences(
        grid: &SamplingGrid<T>,
        values: Vec<T>,
        m: usize,
    ) -> Result<Self> {
        let (derivs_a, derivs_b) = divided_difference_derivs(grid, &values, m)?;
        Ok(Self {
            values,
            derivs_a,
            derivs_b,
            source: DerivativeSource::DividedDifference,
        })
    }
}

/// Endpoint derivative estimates `l! [y_0,..,y_l]f` (forward) and
/// `l! [y_{N-l},..,y_N]f` (backward) for `l = 1..m-1`; exact on polynomials
/// of degree `<= l`.
pub fn divided_difference_derivs<T: Scalar>(
    grid: &SamplingGrid<T>,
    values: &[T],
    m: usize,
) -> Result<(Vec<T>, Vec<T>)> {
    let n = grid.n();
    if values.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            actual: values.len(),
        });
    }
    if n + 1 < m {
        return Err(Error::TooFewSamples {
            required: m,
            actual: n + 1,
        });
    }
    let y = grid.points();

    // forward table on the first m samples: diag[l] = [y_0..y_l]f
    let mut fwd: Vec<T> = values[..m].to_vec();
    let mut derivs_a = Vec::with_capacity(m - 1);
    for l in 1..m {
        for i in 0..m - l {
            fwd[i] = (fwd[i + 1] - fwd[i]) / (y[i + l] - y[i]);
        }
        derivs_a.push(factorial::<T>(l) * fwd[0]);
    }

    // backward: top entries of the table on the last m samples
    let base = n + 1 - m;
    let mut bwd: Vec<T> = values[base..].to_vec();
    let mut derivs_b = Vec::with_capacity(m - 1);
    for l in 1..m {
        for i in 0..m - l {
            bwd[i] = (bwd[i + 1] - bwd[i]) / (y[base + i + l] - y[base + i]);
        }
        // [y_{N-l}, .., y_N]f is the last surviving entry
        derivs_b.push(factorial::<T>(l) * bwd[m - l - 1]);
    }
    Ok((derivs_a, derivs_b))
}

/// One run of union-knot coefficients: `weights[k]` applies to source index
/// `first + k`.
#[derive(Debug, Clone)]
struct Run<T> {
    first: usize,
    weights: Vec<T>,
}

/// The blending operator. Both sub-operators are built once; applying the
/// blend is coefficient accumulation only (no solves).
#[derive(Debug, Clone)]
pub struct BlendOperator<T> {
    quasi: QuasiOperator<T>,
    local: LocalOperator<T>,
    union_knots: Vec<T>,
    /// per union basis function: dual-functional weights against the
    /// quasi-spline's own B-spline coefficients
    q_rows: Vec<Run<T>>,
    /// per local molecule: its coefficients on the union knot vector
    l_runs: Vec<Run<T>>,
}

/// Build the blending operator on a grid.
///
/// ```
/// use splinterp::{build_blend, HermiteData, SamplingGrid};
///
/// let grid = SamplingGrid::new((0..=16).map(|i| i as f64 / 16.0).collect())?;
/// let values: Vec<f64> = grid.points().iter().map(|&y| (3.0 * y).sin()).collect();
/// let data = HermiteData::with_divided_differences(&grid, values, 4)?;
///
/// let op = build_blend(&grid, 4)?;
/// let spline = op.apply(&data)?;
/// assert!((spline.eval(0.3)? - (0.9f64).sin()).abs() < 1e-4);
/// // interpolation is exact at the samples
/// assert!((spline.eval(0.5)? - (1.5f64).sin()).abs() < 1e-12);
/// # Ok::<(), splinterp::Error>(())
/// ```
pub fn build_blend<T: Scalar>(grid: &SamplingGrid<T>, m: usize) -> Result<BlendOperator<T>> {
    let quasi = build_quasi(grid, m)?;
    let local = build_local(grid, m)?;

    let x_knots = quasi.knots().values().to_vec();
    let t_knots = local.refined().t().values().to_vec();
    let union_knots = merge_knots_max(&x_knots, &t_knots);
    let right_end = grid.b();
    let nb = union_knots.len() - m;

    let duals: Vec<DualFunctional<T>> = (0..nb)
        .map(|j| DualFunctional::new(&union_knots, m, j))
        .collect();

    // union coefficients of each x-basis function
    let mut q_rows = Vec::with_capacity(nb);
    for lam in &duals {
        let mu = find_span(&x_knots, m, lam.tau);
        let first = mu + 1 - m;
        let weights = (0..m)
            .map(|k| {
                let span = &x_knots[first + k..=first + k + m];
                lam.apply(&span_all_derivs(span, m, lam.tau, right_end))
            })
            .collect();
        q_rows.push(Run { first, weights });
    }

    // union coefficients of each local molecule; basis j overlaps the
    // support iff w_j < s1 and w_{j+m} > s0, and both conditions are
    // monotone in j
    let (lo, hi) = local.molecule_range();
    let mut l_runs = Vec::with_capacity((hi - lo + 1) as usize);
    for i in lo..=hi {
        let (s0, s1) = local.molecule_support(i);
        let j_lo = union_knots[m..].partition_point(|&k| k <= s0);
        let j_hi = union_knots[..nb].partition_point(|&k| k < s1);
        let mut weights = Vec::with_capacity(j_hi.saturating_sub(j_lo));
        for (j, lam) in duals.iter().enumerate().take(j_hi).skip(j_lo) {
            debug_assert!(union_knots[j] < s1 && union_knots[j + m] > s0);
            let c = if lam.tau < s0 || lam.tau > s1 {
                T::zero()
            } else {
                let derivs: Vec<T> = (0..m)
                    .map(|nn| local.eval_molecule_deriv(i, nn, lam.tau))
                    .collect();
                lam.apply(&derivs)
            };
            weights.push(c);
        }
        l_runs.push(Run {
            first: j_lo,
            weights,
        });
    }

    Ok(BlendOperator {
        quasi,
        local,
        union_knots,
        q_rows,
        l_runs,
    })
}

impl<T: Scalar> BlendOperator<T> {
    pub fn order(&self) -> usize {
        self.quasi.order()
    }

    pub fn grid(&self) -> &SamplingGrid<T> {
        self.quasi.grid()
    }

    pub fn quasi(&self) -> &QuasiOperator<T> {
        &self.quasi
    }

    pub fn local(&self) -> &LocalOperator<T> {
        &self.local
    }

    /// Apply the blend: the quasi-interpolant plus the local correction of
    /// its residual, returned as a single spline on the union refinement of
    /// the two knot vectors.
    pub fn apply(&self, data: &HermiteData<T>) -> Result<SplineFunction<T>> {
        let m = self.order();
        let q_spline = self.quasi.apply(data)?;
        let (qv, qda, qdb) = self.quasi.spline_values_and_derivs(&q_spline);

        let n = self.grid().n();
        let (lo, hi) = self.local.molecule_range();
        let residuals: Vec<T> = (lo..=hi)
            .map(|i| {
                if i < 0 {
                    let l = (-i) as usize;
                    data.derivs_a[l - 1] - qda[l - 1]
                } else if i <= n as isize {
                    data.values[i as usize] - qv[i as usize]
                } else {
                    let r = (i - n as isize) as usize;
                    data.derivs_b[r - 1] - qdb[r - 1]
                }
            })
            .collect();

        let q_coeffs = q_spline.coeffs();
        let mut coeffs: Vec<T> = self
            .q_rows
            .iter()
            .map(|row| {
                let mut acc = T::zero();
                for (k, &w) in row.weights.iter().enumerate() {
                    acc = acc + w * q_coeffs[row.first + k];
                }
                acc
            })
            .collect();
        for (run, &res) in self.l_runs.iter().zip(&residuals) {
            if res == T::zero() {
                continue;
            }
            for (k, &w) in run.weights.iter().enumerate() {
                coeffs[run.first + k] = coeffs[run.first + k] + res * w;
            }
        }
        SplineFunction::new(self.union_knots.clone(), m, coeffs)
    }
}
