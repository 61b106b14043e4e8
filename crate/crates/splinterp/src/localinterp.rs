//! The local Hermite interpolation operator: cardinal single-B-spline
//! molecules at interior samples, and boundary molecules whose coefficients
//! solve the triangular endpoint collocation systems
//! `L^(n)(a) = δ_{l-n}`, `L^(n)(b) = δ_{r-n}`.

use crate::blend::HermiteData;
use crate::bspline::{local_deriv, local_value};
use crate::error::{Error, Result};
use crate::grid::{refined_knots, RefinedKnots, SamplingGrid};
use crate::scalar::Scalar;
use crate::spline::{DualFunctional, SplineFunction};

#[derive(Debug, Clone)]
enum LocalMolecule<T> {
    /// `Σ_k b_k N_{subset_k}`; `side` picks the subset family.
    LeftBoundary { coeffs: Vec<T> },
    RightBoundary { coeffs: Vec<T> },
    /// `N(x) / N(y_i)` on `m+1` contiguous refined knots.
    Interior { span: Vec<T>, denom: T },
}

/// The built operator: refined knots, boundary collocation solutions, and one
/// molecule per data slot, indexed `-(m-1) ..= N+m-1`.
#[derive(Debug, Clone)]
pub struct LocalOperator<T> {
    grid: SamplingGrid<T>,
    m: usize,
    refined: RefinedKnots<T>,
    /// column `k` of the left collocation system is the subset `t_{-m+1+k}`
    left_cols: Vec<Vec<T>>,
    /// column `k` of the right collocation system is the subset `t_{N+k}`
    right_cols: Vec<Vec<T>>,
    molecules: Vec<LocalMolecule<T>>,
}

pub fn build_local<T: Scalar>(grid: &SamplingGrid<T>, m: usize) -> Result<LocalOperator<T>> {
    if m < 3 {
        return Err(Error::OrderTooSmall { m });
    }
    let refined = refined_knots(grid, m)?;
    let n = grid.n();
    let a = grid.a();
    let b = grid.b();

    let left_cols: Vec<Vec<T>> = (0..m).map(|k| refined.left_subset(m - 1 - k)).collect();
    let right_cols: Vec<Vec<T>> = (0..m).map(|k| refined.right_subset(k)).collect();

    // collocation matrices: row n, column k = N_{subset_k}^{(n)}(endpoint)
    let left_mat: Vec<Vec<T>> = (0..m)
        .map(|row| {
            left_cols
                .iter()
                .map(|span| local_deriv(span, row, a, b))
                .collect()
        })
        .collect();
    let right_mat: Vec<Vec<T>> = (0..m)
        .map(|row| {
            right_cols
                .iter()
                .map(|span| local_deriv(span, row, b, b))
                .collect()
        })
        .collect();

    // The left matrix is lower triangular: column k's B-spline has a zero of
    // order exactly k at a. Forward substitution per unit right-hand side.
    let solve_left = |l: usize| -> Result<Vec<T>> {
        let mut coeffs = vec![T::zero(); m];
        for row in 0..m {
            let rhs = if row == l { T::one() } else { T::zero() };
            let mut acc = rhs;
            for k in 0..row {
                acc = acc - left_mat[row][k] * coeffs[k];
            }
            let diag = left_mat[row][row];
            if diag == T::zero() {
                return Err(Error::SingularCollocation);
            }
            coeffs[row] = acc / diag;
        }
        Ok(coeffs)
    };
    // Mirrored structure on the right: column k's B-spline has a zero of
    // order exactly m-1-k at b, so row n determines coefficient m-1-n.
    let solve_right = |r: usize| -> Result<Vec<T>> {
        let mut coeffs = vec![T::zero(); m];
        for row in 0..m {
            let unknown = m - 1 - row;
            let rhs = if row == r { T::one() } else { T::zero() };
            let mut acc = rhs;
            for k in unknown + 1..m {
                acc = acc - right_mat[row][k] * coeffs[k];
            }
            let diag = right_mat[row][unknown];
            if diag == T::zero() {
                return Err(Error::SingularCollocation);
            }
            coeffs[unknown] = acc / diag;
        }
        Ok(coeffs)
    };

    let count = n + 2 * m - 1;
    let mut molecules = Vec::with_capacity(count);
    for idx in 0..count {
        let i = idx as isize - (m as isize - 1);
        let mol = if i <= 0 {
            LocalMolecule::LeftBoundary {
                coeffs: solve_left((-i) as usize)?,
            }
        } else if i < n as isize {
            let span = refined.interior_span(i as usize).to_vec();
            let y = grid.point(i as usize);
            let denom = local_value(&span, y, b);
            if denom == T::zero() {
                return Err(Error::AnchorVanishes { index: i as usize });
            }
            LocalMolecule::Interior { span, denom }
        } else {
            LocalMolecule::RightBoundary {
                coeffs: solve_right((i - n as isize) as usize)?,
            }
        };
        molecules.push(mol);
    }

    Ok(LocalOperator {
        grid: grid.clone(),
        m,
        refined,
        left_cols,
        right_cols,
        molecules,
    })
}

impl<T: Scalar> LocalOperator<T> {
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn grid(&self) -> &SamplingGrid<T> {
        &self.grid
    }

    pub fn refined(&self) -> &RefinedKnots<T> {
        &self.refined
    }

    /// Molecule indices run `-(m-1) ..= N+m-1`.
    pub fn molecule_range(&self) -> (isize, isize) {
        let m = self.m as isize;
        (-(m - 1), self.grid.n() as isize + m - 1)
    }

    /// Boundary coefficient `b_{m,-l,k}`.
    pub fn b_left(&self, l: usize, k: usize) -> T {
        match &self.molecules[self.m - 1 - l] {
            LocalMolecule::LeftBoundary { coeffs } => coeffs[k],
            _ => unreachable!(),
        }
    }

    /// Boundary coefficient `b_{m,N+r,k}`.
    pub fn b_right(&self, r: usize, k: usize) -> T {
        match &self.molecules[self.m - 1 + self.grid.n() + r] {
            LocalMolecule::RightBoundary { coeffs } => coeffs[k],
            _ => unreachable!(),
        }
    }

    /// Support interval of molecule `i`.
    pub fn molecule_support(&self, i: isize) -> (T, T) {
        match &self.molecules[(i + self.m as isize - 1) as usize] {
            LocalMolecule::LeftBoundary { .. } => (self.grid.a(), self.grid.point(1)),
            LocalMolecule::RightBoundary { .. } => {
                (self.grid.point(self.grid.n() - 1), self.grid.b())
            }
            LocalMolecule::Interior { span, .. } => (span[0], span[self.m]),
        }
    }

    pub fn eval_molecule(&self, i: isize, x: T) -> T {
        self.eval_molecule_deriv(i, 0, x)
    }

    pub fn eval_molecule_deriv(&self, i: isize, n: usize, x: T) -> T {
        let b = self.grid.b();
        let value = |span: &[T]| -> T {
            if n == 0 {
                local_value(span, x, b)
            } else {
                local_deriv(span, n, x, b)
            }
        };
        match &self.molecules[(i + self.m as isize - 1) as usize] {
            LocalMolecule::LeftBoundary { coeffs } => {
                let mut acc = T::zero();
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != T::zero() {
                        acc = acc + c * value(&self.left_cols[k]);
                    }
                }
                acc
            }
            LocalMolecule::RightBoundary { coeffs } => {
                let mut acc = T::zero();
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != T::zero() {
                        acc = acc + c * value(&self.right_cols[k]);
                    }
                }
                acc
            }
            LocalMolecule::Interior { span, denom } => value(span) / *denom,
        }
    }

    fn check_data(&self, data: &HermiteData<T>) -> Result<()> {
        let n = self.grid.n();
        if data.values.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                actual: data.values.len(),
            });
        }
        if data.derivs_a.len() != self.m - 1 || data.derivs_b.len() != self.m - 1 {
            return Err(Error::LengthMismatch {
                expected: self.m - 1,
                actual: data.derivs_a.len().max(data.derivs_b.len()),
            });
        }
        Ok(())
    }

    pub(crate) fn weight(&self, i: isize, data: &HermiteData<T>) -> T {
        let n = self.grid.n() as isize;
        if i < 0 {
            data.derivs_a[(-i - 1) as usize]
        } else if i <= n {
            data.values[i as usize]
        } else {
            data.derivs_b[(i - n - 1) as usize]
        }
    }

    /// Derivatives `0..m-1` at `x` of the full molecule sum with the given
    /// weights, restricted to molecules whose support contains `x`.
    pub(crate) fn weighted_all_derivs(&self, weights: &[T], x: T) -> Vec<T> {
        let (lo, hi) = self.molecule_range();
        let mut out = vec![T::zero(); self.m];
        for i in lo..=hi {
            let w = weights[(i + self.m as isize - 1) as usize];
            if w == T::zero() {
                continue;
            }
            let (s0, s1) = self.molecule_support(i);
            if x < s0 || x > s1 {
                continue;
            }
            for (n, slot) in out.iter_mut().enumerate() {
                *slot = *slot + w * self.eval_molecule_deriv(i, n, x);
            }
        }
        out
    }

    /// Apply the operator: the result is a spline on the refined knot vector
    /// (every molecule lies in that space), expressed there through the
    /// dual functionals.
    pub fn apply(&self, data: &HermiteData<T>) -> Result<SplineFunction<T>> {
        self.check_data(data)?;
        let (lo, hi) = self.molecule_range();
        let weights: Vec<T> = (lo..=hi).map(|i| self.weight(i, data)).collect();
        let knots = self.refined.t().values().to_vec();
        let nb = knots.len() - self.m;
        let mut coeffs = Vec::with_capacity(nb);
        for j in 0..nb {
            let lam = DualFunctional::new(&knots, self.m, j);
            let derivs = self.weighted_all_derivs(&weights, lam.tau);
            coeffs.push(lam.apply(&derivs));
        }
        SplineFunction::new(knots, self.m, coeffs)
    }
}
