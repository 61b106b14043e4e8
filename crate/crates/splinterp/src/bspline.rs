//! Normalized B-splines on knot vectors with multiplicities: Cox–de Boor
//! evaluation with the 0/0 := 0 convention, derivative evaluation through the
//! lower-order difference recursion, and the divided-difference
//! truncated-power oracle.

use crate::error::{Error, Result};
use crate::grid::KnotVector;
use crate::scalar::Scalar;

/// Value at `x` of the single normalized B-spline whose knots are the whole
/// slice `u` (order = `u.len() - 1`). Points are assigned to the half-open
/// interval on their right except at `right_end`, where the left limit is
/// taken so that splines evaluate correctly at the closed right endpoint.
pub(crate) fn local_value<T: Scalar>(u: &[T], x: T, right_end: T) -> T {
    let ord = u.len() - 1;
    debug_assert!(ord >= 1);
    let mut vals = vec![T::zero(); ord];
    for (i, slot) in vals.iter_mut().enumerate() {
        let lo = u[i];
        let hi = u[i + 1];
        if lo == hi {
            continue;
        }
        let inside = if x == right_end {
            lo < x && x <= hi
        } else {
            lo <= x && x < hi
        };
        if inside {
            *slot = T::one();
        }
    }
    for k in 2..=ord {
        for i in 0..=ord - k {
            let d1 = u[i + k - 1] - u[i];
            let left = if d1 > T::zero() {
                (x - u[i]) / d1 * vals[i]
            } else {
                T::zero()
            };
            let d2 = u[i + k] - u[i + 1];
            let right = if d2 > T::zero() {
                (u[i + k] - x) / d2 * vals[i + 1]
            } else {
                T::zero()
            };
            vals[i] = left + right;
        }
    }
    vals[0]
}

/// `n`-th derivative at `x` of the single B-spline on `u`, by the standard
/// lower-order difference recursion applied `n` times.
pub(crate) fn local_deriv<T: Scalar>(u: &[T], n: usize, x: T, right_end: T) -> T {
    if n == 0 {
        return local_value(u, x, right_end);
    }
    let ord = u.len() - 1;
    if n >= ord {
        return T::zero();
    }
    let scale = T::from_usize(ord - 1).unwrap();
    let d1 = u[ord - 1] - u[0];
    let left = if d1 > T::zero() {
        local_deriv(&u[..ord], n - 1, x, right_end) / d1
    } else {
        T::zero()
    };
    let d2 = u[ord] - u[1];
    let right = if d2 > T::zero() {
        local_deriv(&u[1..], n - 1, x, right_end) / d2
    } else {
        T::zero()
    };
    scale * (left - right)
}

/// B-spline basis of order `m` over a knot vector: `N_{x,m,j}` for logical
/// `j = first_index ..= last_index - m`.
#[derive(Debug, Clone)]
pub struct BSplineBasis<T> {
    knots: KnotVector<T>,
    m: usize,
}

impl<T: Scalar> BSplineBasis<T> {
    pub fn new(knots: KnotVector<T>, m: usize) -> Result<Self> {
        if knots.len() < m + 1 {
            return Err(Error::TooFewSamples {
                required: m + 1,
                actual: knots.len(),
            });
        }
        let basis = Self { knots, m };
        for j in basis.first_basis()..=basis.last_basis() {
            let span = basis.knots.slice(j, m + 1);
            if span[0] == span[m] {
                return Err(Error::DegenerateSpan);
            }
        }
        Ok(basis)
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn knots(&self) -> &KnotVector<T> {
        &self.knots
    }

    pub fn first_basis(&self) -> isize {
        self.knots.first_index()
    }

    pub fn last_basis(&self) -> isize {
        self.knots.last_index() - self.m as isize
    }

    fn span_of(&self, j: isize) -> Result<&[T]> {
        if j < self.first_basis() || j > self.last_basis() {
            return Err(Error::IndexOutOfRange { index: j });
        }
        Ok(self.knots.slice(j, self.m + 1))
    }

    /// Value of `N_{m,j}` at `x`.
    pub fn eval(&self, j: isize, x: T) -> Result<T> {
        let span = self.span_of(j)?;
        Ok(local_value(span, x, *self.knots.values().last().unwrap()))
    }

    /// `n`-th derivative of `N_{m,j}` at `x`, `0 <= n <= m-1`.
    pub fn eval_deriv(&self, j: isize, n: usize, x: T) -> Result<T> {
        if n > self.m - 1 {
            return Err(Error::DerivativeOrder { order: n, m: self.m });
        }
        let span = self.span_of(j)?;
        Ok(local_deriv(span, n, x, *self.knots.values().last().unwrap()))
    }
}

/// Truncated-power divided-difference oracle:
/// `(x_{j+m} - x_j) [x_j, .., x_{j+m}] (. - x)_+^{m-1}`, with confluent table
/// entries (derivative values of the truncated power) at repeated knots.
/// Test oracle for the Cox–de Boor recursion.
pub fn truncated_power_oracle<T: Scalar>(span: &[T], x: T) -> Result<T> {
    let m = span.len() - 1;
    if m < 1 || span[m] <= span[0] {
        return Err(Error::DegenerateSpan);
    }
    // c-th derivative in t of (t - x)_+^{m-1}, with the positive-part factor
    // taken as zero at the tie t = x.
    let pow_plus = |u: T, k: usize| -> T {
        if u > T::zero() {
            u.powi(k as i32)
        } else {
            T::zero()
        }
    };
    let g_deriv = |t: T, c: usize| -> T {
        if c > m - 1 {
            return T::zero();
        }
        let mut falling = T::one();
        for f in 0..c {
            falling = falling * T::from_usize(m - 1 - f).unwrap();
        }
        falling * pow_plus(t - x, m - 1 - c)
    };
    let mut col: Vec<T> = span.iter().map(|&t| g_deriv(t, 0)).collect();
    let mut c_fact = T::one();
    for c in 1..=m {
        c_fact = c_fact * T::from_usize(c).unwrap();
        let mut next = vec![T::zero(); m + 1 - c];
        for (i, slot) in next.iter_mut().enumerate() {
            let lo = span[i];
            let hi = span[i + c];
            *slot = if hi == lo {
                g_deriv(lo, c) / c_fact
            } else {
                (col[i + 1] - col[i]) / (hi - lo)
            };
        }
        col = next;
    }
    Ok((span[m] - span[0]) * col[0])
}
