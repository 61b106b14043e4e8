//! Sampling grids and the two knot constructions the operators are built on:
//! the midpoint knot vector (quasi-interpolation) and the refined knot vector
//! with its boundary subsequences (local Hermite interpolation).

use crate::error::{Error, Result};
use crate::scalar::{num, Scalar};

/// Strictly increasing sampling points `y_0 < ... < y_N` on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid<T> {
    points: Vec<T>,
}

impl<T: Scalar> SamplingGrid<T> {
    pub fn new(points: Vec<T>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewSamples {
                required: 2,
                actual: points.len(),
            });
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
        }
        for i in 1..points.len() {
            if points[i] <= points[i - 1] {
                return Err(Error::NotIncreasing { index: i });
            }
        }
        Ok(Self { points })
    }

    /// Number of sample intervals, i.e. the `N` of `y_0..y_N`.
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn point(&self, i: usize) -> T {
        self.points[i]
    }

    pub fn a(&self) -> T {
        self.points[0]
    }

    pub fn b(&self) -> T {
        *self.points.last().unwrap()
    }
}

/// Non-decreasing knot sequence with an index offset so that logical indices
/// may be negative (the stacked copies of `a` sit at `-m+1..0`).
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector<T> {
    values: Vec<T>,
    first_index: isize,
}

impl<T: Scalar> KnotVector<T> {
    pub fn new(values: Vec<T>, first_index: isize) -> Result<Self> {
        for i in 1..values.len() {
            if values[i] < values[i - 1] {
                return Err(Error::KnotsNotSorted { index: i });
            }
        }
        Ok(Self {
            values,
            first_index,
        })
    }

    pub fn first_index(&self) -> isize {
        self.first_index
    }

    pub fn last_index(&self) -> isize {
        self.first_index + self.values.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn knot(&self, index: isize) -> T {
        self.values[(index - self.first_index) as usize]
    }

    pub fn contains_index(&self, index: isize) -> bool {
        index >= self.first_index && index <= self.last_index()
    }

    /// Knots `index ..= index + len - 1` as a contiguous slice.
    pub(crate) fn slice(&self, index: isize, len: usize) -> &[T] {
        let start = (index - self.first_index) as usize;
        &self.values[start..start + len]
    }
}

/// Midpoint knot vector for the quasi-interpolation operator: interior knots
/// halfway between consecutive samples, ends stacked to multiplicity `m`.
/// Logical indices run `-m+1 ..= N+m`.
pub fn midpoint_knots<T: Scalar>(grid: &SamplingGrid<T>, m: usize) -> Result<KnotVector<T>> {
    if m < 3 {
        return Err(Error::OrderTooSmall { m });
    }
    let n = grid.n();
    let y = grid.points();
    let half = T::from_f64(0.5).unwrap();
    let mut values = Vec::with_capacity(n + 2 * m);
    for _ in 0..m - 1 {
        values.push(grid.a());
    }
    values.push(y[0]);
    for i in 1..=n {
        values.push(y[i - 1] + (y[i] - y[i - 1]) * half);
    }
    values.push(y[n]);
    for _ in 0..m - 1 {
        values.push(grid.b());
    }
    KnotVector::new(values, -(m as isize) + 1)
}

/// Refined knot vector `t` of the local interpolation operator, together with
/// the anchor map `y_j -> t-index` and the boundary knot subsequences.
#[derive(Debug, Clone)]
pub struct RefinedKnots<T> {
    t: KnotVector<T>,
    anchors: Vec<isize>,
    m: usize,
    n: usize,
}

/// Number of knots inserted into the open sample interval `(y_j, y_{j+1})`.
fn insertion_count(m: usize, n: usize, j: usize) -> usize {
    if j == 0 || j == n - 1 {
        return m - 1;
    }
    if m % 2 == 0 {
        m / 2 - 1
    } else {
        let r = (m + 1) / 2;
        if j % 2 == 0 {
            r - 1
        } else {
            r - 2
        }
    }
}

/// Half the sample-interval count covered by one interior molecule:
/// `q_m = m/2` for even `m`, `r_m = (m+1)/2` for odd `m`.
fn interior_step(m: usize) -> usize {
    if m % 2 == 0 {
        m / 2
    } else {
        (m + 1) / 2
    }
}

pub fn refined_knots<T: Scalar>(grid: &SamplingGrid<T>, m: usize) -> Result<RefinedKnots<T>> {
    if m < 3 {
        return Err(Error::OrderTooSmall { m });
    }
    let n = grid.n();
    if n < 3 {
        return Err(Error::RefinedGridTooSmall { n });
    }
    let y = grid.points();
    let mut values = Vec::new();
    let mut anchors = Vec::with_capacity(n + 1);
    for _ in 0..m - 1 {
        values.push(y[0]);
    }
    let offset = (m - 1) as isize;
    anchors.push(values.len() as isize - offset);
    values.push(y[0]);
    for j in 0..n {
        let count = insertion_count(m, n, j);
        let gap = y[j + 1] - y[j];
        let denom = num::<T>(count + 1);
        for i in 1..=count {
            values.push(y[j] + gap * num::<T>(i) / denom);
        }
        anchors.push(values.len() as isize - offset);
        values.push(y[j + 1]);
    }
    for _ in 0..m - 1 {
        values.push(y[n]);
    }

    // Anchor identities from the construction: t_{m+(j-1)q_m} = y_j for even
    // m, t_{m+(j-1)r_m - floor(j/2)} = y_j for odd m, j = 1..N-1.
    if cfg!(debug_assertions) {
        let step = interior_step(m) as isize;
        for j in 1..n {
            let expected = if m % 2 == 0 {
                m as isize + (j as isize - 1) * step
            } else {
                m as isize + (j as isize - 1) * step - (j / 2) as isize
            };
            debug_assert_eq!(anchors[j], expected, "anchor identity at j = {j}");
        }
    }

    let t = KnotVector::new(values, -offset)?;
    Ok(RefinedKnots { t, anchors, m, n })
}

impl<T: Scalar> RefinedKnots<T> {
    pub fn t(&self) -> &KnotVector<T> {
        &self.t
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Logical t-index of sample `y_j`.
    pub fn anchor(&self, j: usize) -> isize {
        self.anchors[j]
    }

    /// First knot index of the interior molecule at sample `i` (`1..=N-1`):
    /// the molecule's B-spline lives on `t_{start} ..= t_{start+m}`.
    pub(crate) fn interior_start(&self, i: usize) -> isize {
        if i == 1 {
            (self.m - interior_step(self.m)) as isize
        } else {
            self.anchors[i - 1]
        }
    }

    pub(crate) fn interior_span(&self, i: usize) -> &[T] {
        self.t.slice(self.interior_start(i), self.m + 1)
    }

    /// Boundary subsequence `t_{-k}` (`k = 0..m-1`): `k` stacked copies of
    /// `a` followed by `m+1-k` knots spread over `t_0..t_m`.
    pub fn left_subset(&self, k: usize) -> Vec<T> {
        let mut out = vec![self.t.knot(0); k];
        for s in spread_indices(self.m, k) {
            out.push(self.t.knot(s as isize));
        }
        out
    }

    /// Boundary subsequence `t_{N+k}`: `m+1-k` knots spread over the last
    /// sample interval's knot run, followed by `k` stacked copies of `b`.
    pub fn right_subset(&self, k: usize) -> Vec<T> {
        let last = self.anchors[self.n];
        let mut picks: Vec<usize> = spread_indices(self.m, k)
            .into_iter()
            .map(|s| self.m - s)
            .collect();
        picks.reverse();
        let mut out: Vec<T> = picks
            .into_iter()
            .map(|d| self.t.knot(last - self.m as isize + d as isize))
            .collect();
        for _ in 0..k {
            out.push(self.t.knot(last));
        }
        out
    }

    /// All boundary knot subsequences with their molecule labels: `t_{-k}`
    /// labelled `-k`, `t_{N+k}` labelled `N+k`, plus the two special interior
    /// runs `t_1` and `t_{N-1}`.
    pub fn boundary_knot_subsets(&self) -> Vec<(isize, Vec<T>)> {
        let mut out = Vec::with_capacity(2 * self.m + 2);
        for k in (1..self.m).rev() {
            out.push((-(k as isize), self.left_subset(k)));
        }
        out.push((0, self.left_subset(0)));
        out.push((1, self.interior_span(1).to_vec()));
        out.push((self.n as isize - 1, self.interior_span(self.n - 1).to_vec()));
        for k in 0..self.m {
            out.push(((self.n + k) as isize, self.right_subset(k)));
        }
        out
    }
}

/// `m+1-k` indices into `0..=m`, spread evenly, always containing both
/// endpoints: round-half-up of `j*m/(m-k)` for `j = 0..=m-k`.
fn spread_indices(m: usize, k: usize) -> Vec<usize> {
    assert!(k < m);
    let d = m - k;
    let mut out = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let idx = (2 * j * m + d) / (2 * d);
        if let Some(&prev) = out.last() {
            debug_assert!(idx > prev, "spread indices must be strictly increasing");
        }
        out.push(idx);
    }
    debug_assert_eq!(*out.first().unwrap(), 0);
    debug_assert_eq!(*out.last().unwrap(), m);
    out
}
