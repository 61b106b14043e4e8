//! Mesh diagnostics and the a-priori sup-norm error bounds of the blending
//! operator, with every constant written out as the explicit finite sum it
//! comes from.

use crate::error::{Error, Result};
use crate::grid::{KnotVector, RefinedKnots, SamplingGrid};
use crate::scalar::{factorial, num, Scalar};
use crate::spline::SplineFunction;

/// The six mesh quantities the bounds are phrased in.
///
/// * `gamma`: sup over `n` of `|x_n - y_{n-m+1}|` with the left samples
///   stacked (`y_{-m+1} = .. = y_0`)
/// * `delta`: `min(1, inf |y_{n+1} - y_n|)`
/// * `epsilon`: `sup |x_{n+1} - x_n|` over the interior knot gaps
/// * `rho`: `max(1, |y_1 - y_0|, |y_N - y_{N-1}|)`
/// * `lambda`: `min(1, inf |t_{n+1} - t_n|)` over distinct refined knots
/// * `tau`: the boundary-coefficient bound derived from `rho` and `lambda`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshStats<T> {
    pub gamma: T,
    pub delta: T,
    pub epsilon: T,
    pub rho: T,
    pub lambda: T,
    pub tau: T,
    pub n: usize,
    pub m: usize,
}

/// `tau = max(1, rho^{m-1}/(m-1), m! (rho^{m-1} (m-1)! (m-2)! / lambda^{m-1})^m)`.
pub(crate) fn tau_value<T: Scalar>(rho: T, lambda: T, m: usize) -> T {
    let p = (m - 1) as i32;
    let second = rho.powi(p) / num::<T>(m - 1);
    let inner = rho.powi(p) * factorial::<T>(m - 1) * factorial::<T>(m - 2) / lambda.powi(p);
    let third = factorial::<T>(m) * inner.powi(m as i32);
    T::one().max(second).max(third)
}

pub fn mesh_stats<T: Scalar>(
    grid: &SamplingGrid<T>,
    x: &KnotVector<T>,
    rk: &RefinedKnots<T>,
    m: usize,
) -> MeshStats<T> {
    let n = grid.n();
    let y = grid.points();

    let mut gamma = T::zero();
    for k in 0..=(n + m - 1) as isize {
        let sample = if k - (m as isize - 1) < 0 {
            y[0]
        } else {
            y[(k - (m as isize - 1)) as usize]
        };
        gamma = gamma.max((x.knot(k) - sample).abs());
    }

    let mut min_gap = T::infinity();
    for w in y.windows(2) {
        min_gap = min_gap.min(w[1] - w[0]);
    }
    let delta = T::one().min(min_gap);

    let mut epsilon = T::zero();
    for k in 0..=n as isize {
        epsilon = epsilon.max(x.knot(k + 1) - x.knot(k));
    }

    let rho = T::one().max(y[1] - y[0]).max(y[n] - y[n - 1]);

    let mut lambda = T::one();
    let t = rk.t().values();
    for w in t.windows(2) {
        let gap = w[1] - w[0];
        if gap > T::zero() {
            lambda = lambda.min(gap);
        }
    }

    MeshStats {
        gamma,
        delta,
        epsilon,
        rho,
        lambda,
        tau: tau_value(rho, lambda, m),
        n,
        m,
    }
}

/// Which of the four bound shapes applies to knot interval `[x_i, x_{i+1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorRegion {
    /// `i in {0, 1}`
    LeftBoundary,
    /// `i in {2, .., N-m+1}`
    Interior,
    /// `i in {N-m+2, .., N-2}`
    RightInner,
    /// `i in {N-1, N}`
    RightBoundary,
}

impl ErrorRegion {
    pub fn label(self) -> &'static str {
        match self {
            ErrorRegion::LeftBoundary => "U",
            ErrorRegion::Interior => "V",
            ErrorRegion::RightInner => "W",
            ErrorRegion::RightBoundary => "X",
        }
    }
}

pub fn classify_region(i: usize, n: usize, m: usize) -> Result<ErrorRegion> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i as isize });
    }
    Ok(if i <= 1 {
        ErrorRegion::LeftBoundary
    } else if i + m <= n + 1 {
        ErrorRegion::Interior
    } else if i + 2 <= n {
        ErrorRegion::RightInner
    } else {
        ErrorRegion::RightBoundary
    })
}

/// `Σ_{k=lo..=hi} k^e` as a scalar.
fn power_sum<T: Scalar>(lo: usize, hi: usize, e: usize) -> T {
    let mut acc = T::zero();
    for k in lo..=hi {
        acc = acc + num::<T>(k).powi(e as i32);
    }
    acc
}

/// The bound factor (`U`, `V`, `W` or `X`) for one knot interval: the error
/// bound per unit of `||f^{(m)}||` on that interval.
///
/// The named constants come from collecting terms in the four boundary
/// estimates; the barred sums are the finite power sums those estimates
/// display:
///
/// * `A1 = (1 + m 2^{m-1} + m 3^{m-1})/(m-1)!`
/// * `Ã1 = [Σ_{k=2}^{m+1} k^{m-1} + 3m Σ_{k=2}^{m+2} k^{m-1}]/(m-2)!`,
///   `A2 = Ã1/(m-1)!`
/// * `Ã2 = m² Σ_{k=2}^{m-1} k^{m-1}/(m-2)!`, `A3 = Ã2/(m-1)!`
/// * `A4 = (m+1)/(m-2)!`, `A5 = m²(m-1)/(m-2)!`, `A6 = m`
/// * `B1 = (2 + 2^{m-1})/(m-1)!`
/// * `B̃1 = [Σ_{k=1}^{m-1} k^{m-1} + 2 Σ_{k=1}^{m} k^{m-1} + Σ_{k=1}^{m+1} k^{m-1}]/(m-2)!`,
///   `B2 = B̃1/(m-1)!`
/// * `C1 = B1`, `C̃1 = 4 Σ_{k=1}^{m-1} k^{m-1}/(m-2)!`, `C2 = C̃1/(m-1)!`,
///   `C3 = 4(m-1)((m-1)!)^{m-3}/(m-2)!`
/// * `D1 = (1 + m + m 2^{m-1})/(m-1)!`,
///   `D2 = (1 + 2^{m-1} + 3m + 3m 2^{m-1})/((m-2)!(m-1)!)`,
///   `D3 = (1 + 2^{m-1}) m² (m-1)/((m-1)!(m-2)!)`,
///   `D4 = (6m+2)((m-1)!)^{m-3}/(m-2)!`,
///   `D5 = 2m((m-1)!)^{m-3}`,
///   `D6 = 2m²(m-1)((m-1)!)^{m-3}/(m-2)!`
pub fn bound_factor<T: Scalar>(stats: &MeshStats<T>, region: ErrorRegion) -> T {
    let m = stats.m;
    let one = T::one();
    let two = one + one;
    let p = (m - 1) as i32;
    let fm1 = factorial::<T>(m - 1);
    let fm2 = factorial::<T>(m - 2);
    let mm = num::<T>(m);
    let eps = stats.epsilon;
    let gd = (stats.gamma / stats.delta).powi(p);
    let td = (two / stats.delta).powi(p);
    let tau = stats.tau;
    let two_pm = two.powi(p);
    let three_pm = (one + two).powi(p);
    // ((m-1)!)^{m-3}; exponent 0 for m = 3
    let fm1_pow = fm1.powi(m as i32 - 3);
    let geo = if eps == one {
        num::<T>(m - 1)
    } else {
        (one - eps.powi(p)) / (one - eps)
    };
    let eps_m = eps.powi(m as i32);

    match region {
        ErrorRegion::LeftBoundary => {
            let a1 = (one + mm * two_pm + mm * three_pm) / fm1;
            let a2 = (power_sum::<T>(2, m + 1, m - 1) + num::<T>(3 * m) * power_sum::<T>(2, m + 2, m - 1))
                / fm2
                / fm1;
            let a3 = mm * mm * power_sum::<T>(2, m - 1, m - 1) / fm2 / fm1;
            let a4 = num::<T>(m + 1) / fm2;
            let a5 = mm * mm * num::<T>(m - 1) / fm2;
            let a6 = mm;
            eps_m * (a1 + a2 * gd + a3 * tau * gd * td) + eps * (a4 * gd + a5 * tau * gd * td + a6 * tau)
        }
        ErrorRegion::Interior => {
            let b1 = (two + two_pm) / fm1;
            let b2 = (power_sum::<T>(1, m - 1, m - 1)
                + two * power_sum::<T>(1, m, m - 1)
                + power_sum::<T>(1, m + 1, m - 1))
                / fm2
                / fm1;
            eps_m * (b1 + b2 * gd)
        }
        ErrorRegion::RightInner => {
            let c1 = (two + two_pm) / fm1;
            let c2 = num::<T>(4) * power_sum::<T>(1, m - 1, m - 1) / fm2 / fm1;
            let c3 = num::<T>(4) * num::<T>(m - 1) * fm1_pow / fm2;
            eps_m * (c1 + c2 * gd) + eps * c3 * gd * geo
        }
        ErrorRegion::RightBoundary => {
            let d1 = (one + mm + mm * two_pm) / fm1;
            let d2 = (one + two_pm + num::<T>(3 * m) + num::<T>(3 * m) * two_pm) / (fm2 * fm1);
            let d3 = (one + two_pm) * mm * mm * num::<T>(m - 1) / (fm1 * fm2);
            let d4 = num::<T>(6 * m + 2) * fm1_pow / fm2;
            let d5 = two * mm * fm1_pow;
            let d6 = two * mm * mm * num::<T>(m - 1) * fm1_pow / fm2;
            eps_m * (d1 + d2 * gd + d3 * tau * gd * td)
                + eps * (d4 * gd * geo + d5 * tau * geo + d6 * tau * gd * td * geo)
        }
    }
}

/// Sup-norm error bound on knot interval `i`: `||f^{(m)}|| * factor(region)`.
pub fn error_bound<T: Scalar>(stats: &MeshStats<T>, interval: usize, f_m_norm: T) -> Result<T> {
    let region = classify_region(interval, stats.n, stats.m)?;
    Ok(f_m_norm * bound_factor(stats, region))
}

/// Max of `|f(x) - s(x)|` over a uniform probe grid on `interval` with
/// `samples` subintervals (both endpoints included).
pub fn empirical_sup_error<T: Scalar>(
    f: impl Fn(T) -> T,
    s: &SplineFunction<T>,
    interval: (T, T),
    samples: usize,
) -> T {
    let (lo, hi) = interval;
    let mut sup = T::zero();
    for k in 0..=samples {
        let x = lo + (hi - lo) * num::<T>(k) / num::<T>(samples);
        let err = (f(x) - s.eval_unchecked(x)).abs();
        sup = sup.max(err);
    }
    sup
}
