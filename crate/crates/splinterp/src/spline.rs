//! Evaluable splines in B-spline form on clamped knot vectors, plus the
//! dual-functional machinery used to re-express operator output on a common
//! refined knot vector.

use crate::bspline::{local_deriv, local_value};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};
use crate::symfun::sigma_all;

/// A spline on `[a, b]` in B-spline form: clamped knot vector (end
/// multiplicity = order), coefficient per basis function.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineFunction<T> {
    knots: Vec<T>,
    order: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> SplineFunction<T> {
    pub fn new(knots: Vec<T>, order: usize, coeffs: Vec<T>) -> Result<Self> {
        if order < 1 || knots.len() < 2 * order {
            return Err(Error::TooFewSamples {
                required: 2 * order,
                actual: knots.len(),
            });
        }
        for i in 1..knots.len() {
            if knots[i] < knots[i - 1] {
                return Err(Error::KnotsNotSorted { index: i });
            }
        }
        if coeffs.len() + order != knots.len() {
            return Err(Error::LengthMismatch {
                expected: knots.len() - order,
                actual: coeffs.len(),
            });
        }
        // clamped: full end multiplicities, so the spline is evaluable on all
        // of [a, b]
        if knots[0] != knots[order - 1] || knots[knots.len() - order] != knots[knots.len() - 1] {
            return Err(Error::KnotsNotSorted { index: 0 });
        }
        Ok(Self {
            knots,
            order,
            coeffs,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn domain(&self) -> (T, T) {
        (self.knots[0], *self.knots.last().unwrap())
    }

    fn check_domain(&self, x: T) -> Result<()> {
        let (a, b) = self.domain();
        if x < a || x > b || !x.is_finite() {
            return Err(Error::OutOfDomain);
        }
        Ok(())
    }

    /// Spline value at `x in [a, b]`.
    pub fn eval(&self, x: T) -> Result<T> {
        self.check_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: T) -> T {
        let mu = find_span(&self.knots, self.order, x);
        let basis = nonzero_basis(&self.knots, mu, self.order, x);
        let first = mu + 1 - self.order;
        let mut acc = T::zero();
        for (k, &b) in basis.iter().enumerate() {
            acc = acc + self.coeffs[first + k] * b;
        }
        acc
    }

    /// `n`-th derivative at `x`, `0 <= n <= order-1`.
    pub fn eval_deriv(&self, n: usize, x: T) -> Result<T> {
        if n > self.order - 1 {
            return Err(Error::DerivativeOrder {
                order: n,
                m: self.order,
            });
        }
        self.check_domain(x)?;
        Ok(self.eval_deriv_unchecked(n, x))
    }

    pub(crate) fn eval_deriv_unchecked(&self, n: usize, x: T) -> T {
        if n == 0 {
            return self.eval_unchecked(x);
        }
        let right_end = *self.knots.last().unwrap();
        let mu = find_span(&self.knots, self.order, x);
        let first = mu + 1 - self.order;
        let mut acc = T::zero();
        for k in 0..self.order {
            let j = first + k;
            let span = &self.knots[j..=j + self.order];
            acc = acc + self.coeffs[j] * local_deriv(span, n, x, right_end);
        }
        acc
    }

    /// Derivatives of orders `0..order` at `x`, in one call.
    #[cfg(test)]
    pub(crate) fn all_derivs_unchecked(&self, x: T) -> Vec<T> {
        (0..self.order)
            .map(|n| self.eval_deriv_unchecked(n, x))
            .collect()
    }
}

/// Index `mu` of the knot interval containing `x`: last `mu` with
/// `knots[mu] <= x < knots[mu+1]`, clamped so that `x = b` selects the last
/// nonempty interval (left-limit convention). For a clamped vector the valid
/// spans are `order-1 ..= len-order-1`, so out-of-domain arguments clamp to
/// the first or last interval's polynomial piece.
pub(crate) fn find_span<T: Scalar>(knots: &[T], order: usize, x: T) -> usize {
    let lo = order - 1;
    let hi = knots.len() - order - 1;
    let count = knots.partition_point(|&k| k <= x);
    let mut mu = count.saturating_sub(1).clamp(lo, hi);
    while mu > lo && knots[mu] == knots[mu + 1] {
        mu -= 1;
    }
    mu
}

/// Values at `x` of the `order` basis functions that are nonzero on the span
/// `mu`: entry `k` is `N_{mu - order + 1 + k}`.
pub(crate) fn nonzero_basis<T: Scalar>(knots: &[T], mu: usize, order: usize, x: T) -> Vec<T> {
    let mut b = vec![T::zero(); order];
    b[0] = T::one();
    let mut left = vec![T::zero(); order];
    let mut right = vec![T::zero(); order];
    for k in 1..order {
        left[k] = x - knots[mu + 1 - k];
        right[k] = knots[mu + k] - x;
        let mut saved = T::zero();
        for j in 0..k {
            let denom = right[j + 1] + left[k - j];
            let tmp = if denom != T::zero() {
                b[j] / denom
            } else {
                T::zero()
            };
            b[j] = saved + right[j + 1] * tmp;
            saved = left[k - j] * tmp;
        }
        b[k] = saved;
    }
    b
}

/// Merge two non-decreasing knot sequences: the multiplicity of each value in
/// the result is the maximum of its multiplicities in the inputs.
pub(crate) fn merge_knots_max<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(u.len().max(v.len()));
    let (mut i, mut j) = (0usize, 0usize);
    while i < u.len() || j < v.len() {
        let take_u = match (u.get(i), v.get(j)) {
            (Some(a), Some(b)) => a <= b,
            (Some(_), None) => true,
            _ => false,
        };
        let value = if take_u { u[i] } else { v[j] };
        let mut cu = 0;
        while i + cu < u.len() && u[i + cu] == value {
            cu += 1;
        }
        let mut cv = 0;
        while j + cv < v.len() && v[j + cv] == value {
            cv += 1;
        }
        for _ in 0..cu.max(cv) {
            out.push(value);
        }
        i += cu;
        j += cv;
    }
    out
}

/// de Boor–Fix dual functional for basis function `j` of the order-`m` space
/// on `knots`: `λ_j f = Σ_o c_o f^{(o)}(τ)` recovers the `j`-th B-spline
/// coefficient of any spline `f` in the space, for any `τ` inside the support
/// where `f` is smooth. `c_o = (-1)^o (m-1-o)! σ^o(τ - knots[j+1..j+m]) / (m-1)!`.
#[derive(Debug, Clone)]
pub(crate) struct DualFunctional<T> {
    pub tau: T,
    weights: Vec<T>,
}

impl<T: Scalar> DualFunctional<T> {
    pub fn new(knots: &[T], order: usize, j: usize) -> Self {
        // smooth point: midpoint of the widest knot interval inside the support
        let mut best = (T::zero(), knots[j]);
        for l in j..j + order {
            let w = knots[l + 1] - knots[l];
            if w > best.0 {
                best = (w, knots[l] + w * T::from_f64(0.5).unwrap());
            }
        }
        let tau = best.1;
        let shifted: Vec<T> = (1..order).map(|r| tau - knots[j + r]).collect();
        let e = sigma_all(&shifted);
        let fact = factorial::<T>(order - 1);
        let mut weights = Vec::with_capacity(order);
        let mut sign = T::one();
        for (o, &eo) in e.iter().enumerate() {
            weights.push(sign * factorial::<T>(order - 1 - o) * eo / fact);
            sign = -sign;
        }
        Self { tau, weights }
    }

    /// Apply to a function given by its derivatives `0..order` at `tau`.
    pub fn apply(&self, derivs_at_tau: &[T]) -> T {
        let mut acc = T::zero();
        for (o, &w) in self.weights.iter().enumerate() {
            acc = acc + w * derivs_at_tau[o];
        }
        acc
    }
}

/// Interpolating helper: evaluate all derivatives `0..order` of the single
/// B-spline on `span` at `x`.
pub(crate) fn span_all_derivs<T: Scalar>(span: &[T], order: usize, x: T, right_end: T) -> Vec<T> {
    let _ = order;
    (0..span.len() - 1)
        .map(|n| {
            if n == 0 {
                local_value(span, x, right_end)
            } else {
                local_deriv(span, n, x, right_end)
            }
        })
        .collect()
}

/// Constant-one spline helper used in tests: coefficients all one.
#[allow(dead_code)]
pub(crate) fn unit_spline<T: Scalar>(knots: Vec<T>, order: usize) -> Result<SplineFunction<T>> {
    let coeffs = vec![T::one(); knots.len() - order];
    SplineFunction::new(knots, order, coeffs)
}
