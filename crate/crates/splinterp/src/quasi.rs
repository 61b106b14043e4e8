//! The quasi-interpolation operator: spline molecules whose coefficients are
//! determinant ratios over sliding windows of `m` consecutive samples, with
//! end samples entering as confluent nodes. Reproduces polynomials of degree
//! `< m` once `N >= 3m-3`.

use crate::blend::HermiteData;
use crate::bspline::{local_deriv, local_value};
use crate::error::{Error, Result};
use crate::grid::{midpoint_knots, KnotVector, SamplingGrid};
use crate::scalar::Scalar;
use crate::spline::SplineFunction;
use crate::symfun::xi_vector;
use crate::vandermonde::{coefficient_ratio, NodeSpec};

/// One spline molecule: the coefficients multiplying a consecutive run of
/// B-splines, starting at logical basis index `first_basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule<T> {
    pub coefficients: Vec<T>,
    pub first_basis: isize,
    pub support: (T, T),
}

/// Which data value a molecule multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Anchor {
    /// `f^(l)(a)`, `l = 1..m-1`
    LeftDeriv(usize),
    /// `f(y_i)`
    Sample(usize),
    /// `f^(r)(b)`, `r = 1..m-1`
    RightDeriv(usize),
}

/// Which coefficient formula a `(molecule, j)` pair falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientCase {
    Interior,
    LeftConfluent,
    LeftDeriv,
    RightConfluent,
    RightDeriv,
}

impl CoefficientCase {
    pub fn label(self) -> &'static str {
        match self {
            CoefficientCase::Interior => "interior",
            CoefficientCase::LeftConfluent => "left-confluent",
            CoefficientCase::LeftDeriv => "left-deriv",
            CoefficientCase::RightConfluent => "right-confluent",
            CoefficientCase::RightDeriv => "right-deriv",
        }
    }
}

/// The built operator: sampling grid, midpoint knot vector, and one molecule
/// per data slot, indexed `-(m-1) ..= N+m-1`.
#[derive(Debug, Clone)]
pub struct QuasiOperator<T> {
    grid: SamplingGrid<T>,
    m: usize,
    knots: KnotVector<T>,
    molecules: Vec<Molecule<T>>,
    cases: Vec<Vec<CoefficientCase>>,
}

/// Coefficient `a_{m,i,j}` with its formula case.
fn coefficient<T: Scalar>(
    grid: &SamplingGrid<T>,
    knots: &KnotVector<T>,
    m: usize,
    anchor: Anchor,
    j: usize,
) -> Result<(T, CoefficientCase)> {
    let n = grid.n();
    let s = match anchor {
        Anchor::LeftDeriv(_) => 0,
        Anchor::Sample(i) => i,
        Anchor::RightDeriv(_) => n,
    };
    // window of m virtual samples y_lo..y_hi; indices clamp to the ends,
    // repeats become confluent nodes
    let lo = s as isize + j as isize - m as isize + 1;
    let hi = s as isize + j as isize;
    let mult_a = if lo <= 0 { (-lo + 1) as usize } else { 0 };
    let mult_b = if hi >= n as isize {
        (hi - n as isize + 1) as usize
    } else {
        0
    };
    debug_assert!(
        mult_a == 0 || mult_b == 0,
        "sample window may not touch both ends"
    );

    let mut nodes: Vec<(T, usize)> = Vec::with_capacity(m);
    if mult_a > 0 {
        nodes.push((grid.a(), mult_a - 1));
    }
    let mid_lo = lo.max(1);
    let mid_hi = hi.min(n as isize - 1);
    for t in mid_lo..=mid_hi {
        nodes.push((grid.point(t as usize), 0));
    }
    if mult_b > 0 {
        nodes.push((grid.b(), mult_b - 1));
    }

    let (column, case) = match anchor {
        Anchor::LeftDeriv(l) => {
            debug_assert!(l < mult_a);
            (l, CoefficientCase::LeftDeriv)
        }
        Anchor::RightDeriv(r) => {
            debug_assert!(r < mult_b);
            (m - mult_b + r, CoefficientCase::RightDeriv)
        }
        Anchor::Sample(i) => {
            if mult_a >= 2 {
                let col = if i == 0 { 0 } else { mult_a + i - 1 };
                (col, CoefficientCase::LeftConfluent)
            } else if mult_b >= 2 {
                let col = if i == n {
                    m - mult_b
                } else {
                    (i as isize - lo) as usize
                };
                (col, CoefficientCase::RightConfluent)
            } else {
                ((i as isize - lo) as usize, CoefficientCase::Interior)
            }
        }
    };

    let xi = xi_vector(knots, m, lo)?;
    let den = NodeSpec::new(nodes.clone());
    let num = NodeSpec::new(nodes).with_replacement(column, xi.entries);
    Ok((coefficient_ratio(&num, &den)?, case))
}

/// Formula case per the itemized index ranges of the operator definition;
/// used to cross-check the window classification above.
pub(crate) fn itemized_case(m: usize, n: usize, i: usize, j: usize) -> CoefficientCase {
    let interior = (i + j + 1 >= m && i + j <= n)
        || (i >= m - 1 && i + m <= n + 1)
        || (i + m >= n + 2 && j <= n - i);
    if interior {
        CoefficientCase::Interior
    } else if i <= m - 2 && j + i + 2 <= m {
        CoefficientCase::LeftConfluent
    } else {
        CoefficientCase::RightConfluent
    }
}

pub fn build_quasi<T: Scalar>(grid: &SamplingGrid<T>, m: usize) -> Result<QuasiOperator<T>> {
    if m < 3 {
        return Err(Error::OrderTooSmall { m });
    }
    let n = grid.n();
    if n + 3 < 3 * m {
        return Err(Error::GridTooSmall { n, m });
    }
    let knots = midpoint_knots(grid, m)?;
    let count = n + 2 * m - 1;
    let mut molecules = Vec::with_capacity(count);
    let mut cases = Vec::with_capacity(count);
    for idx in 0..count {
        let i = idx as isize - (m as isize - 1);
        let (anchor, j_range, first_basis) = if i < 0 {
            let l = (-i) as usize;
            (Anchor::LeftDeriv(l), 0..=m - 1 - l, -(m as isize) + 1)
        } else if i <= n as isize {
            (Anchor::Sample(i as usize), 0..=m - 1, i - m as isize + 1)
        } else {
            let r = (i - n as isize) as usize;
            (Anchor::RightDeriv(r), r..=m - 1, i - m as isize + 1)
        };
        let mut coefficients = Vec::with_capacity(j_range.end() - j_range.start() + 1);
        let mut mol_cases = Vec::with_capacity(coefficients.capacity());
        for j in j_range {
            let (a, case) = coefficient(grid, &knots, m, anchor, j)?;
            if let Anchor::Sample(si) = anchor {
                debug_assert_eq!(case, itemized_case(m, n, si, j));
            }
            coefficients.push(a);
            mol_cases.push(case);
        }
        let support = match anchor {
            Anchor::LeftDeriv(l) => (knots.knot(0), knots.knot((m - l) as isize)),
            Anchor::Sample(i) => (
                knots.knot(i as isize - m as isize + 1),
                knots.knot(i as isize + m as isize),
            ),
            Anchor::RightDeriv(r) => (
                knots.knot(n as isize - m as isize + 1 + r as isize),
                knots.knot(n as isize + 1),
            ),
        };
        molecules.push(Molecule {
            coefficients,
            first_basis,
            support,
        });
        cases.push(mol_cases);
    }
    Ok(QuasiOperator {
        grid: grid.clone(),
        m,
        knots,
        molecules,
        cases,
    })
}

impl<T: Scalar> QuasiOperator<T> {
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn grid(&self) -> &SamplingGrid<T> {
        &self.grid
    }

    pub fn knots(&self) -> &KnotVector<T> {
        &self.knots
    }

    /// Molecule indices run `-(m-1) ..= N+m-1`.
    pub fn molecule_range(&self) -> (isize, isize) {
        let m = self.m as isize;
        (-(m - 1), self.grid.n() as isize + m - 1)
    }

    pub fn molecule(&self, i: isize) -> &Molecule<T> {
        &self.molecules[(i + self.m as isize - 1) as usize]
    }

    /// Formula case of coefficient `jj` (stored offset) of molecule `i`.
    pub fn molecule_case(&self, i: isize, jj: usize) -> CoefficientCase {
        self.cases[(i + self.m as isize - 1) as usize][jj]
    }

    /// The `j` offset of the first stored coefficient of molecule `i` (right
    /// derivative molecules start at `j = r`).
    pub fn first_j(&self, i: isize) -> usize {
        let n = self.grid.n() as isize;
        if i > n {
            (i - n) as usize
        } else {
            0
        }
    }

    /// Evaluate molecule `i` at `x`.
    pub fn eval_molecule(&self, i: isize, x: T) -> T {
        self.eval_molecule_deriv(i, 0, x)
    }

    pub fn eval_molecule_deriv(&self, i: isize, n: usize, x: T) -> T {
        let right_end = self.grid.b();
        let mol = self.molecule(i);
        let mut acc = T::zero();
        for (k, &a) in mol.coefficients.iter().enumerate() {
            let span = self.knots.slice(mol.first_basis + k as isize, self.m + 1);
            let v = if n == 0 {
                local_value(span, x, right_end)
            } else {
                local_deriv(span, n, x, right_end)
            };
            acc = acc + a * v;
        }
        acc
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

    fn weight(&self, i: isize, data: &HermiteData<T>) -> T {
        let n = self.grid.n() as isize;
        if i < 0 {
            data.derivs_a[(-i - 1) as usize]
        } else if i <= n {
            data.values[i as usize]
        } else {
            data.derivs_b[(i - n - 1) as usize]
        }
    }

    /// Apply the operator: accumulate the weighted molecules into B-spline
    /// coefficients on the midpoint knot vector.
    pub fn apply(&self, data: &HermiteData<T>) -> Result<SplineFunction<T>> {
        self.check_data(data)?;
        let n = self.grid.n();
        let mut coeffs = vec![T::zero(); n + self.m];
        let (lo, hi) = self.molecule_range();
        for i in lo..=hi {
            let w = self.weight(i, data);
            let mol = self.molecule(i);
            for (k, &a) in mol.coefficients.iter().enumerate() {
                let phys = (mol.first_basis + k as isize + self.m as isize - 1) as usize;
                coeffs[phys] = coeffs[phys] + w * a;
            }
        }
        SplineFunction::new(self.knots.values().to_vec(), self.m, coeffs)
    }

    /// Values of `Q_m f` at every sample plus its derivatives of orders
    /// `1..m-1` at both endpoints: exactly the quantities the blending
    /// correction needs.
    pub fn values_and_endpoint_derivs(
        &self,
        data: &HermiteData<T>,
    ) -> Result<(Vec<T>, Vec<T>, Vec<T>)> {
        let spline = self.apply(data)?;
        Ok(self.spline_values_and_derivs(&spline))
    }

    pub(crate) fn spline_values_and_derivs(&self, spline: &SplineFunction<T>) -> (Vec<T>, Vec<T>, Vec<T>) {
        let values = self
            .grid
            .points()
            .iter()
            .map(|&y| spline.eval_unchecked(y))
            .collect();
        let derivs_a = (1..self.m)
            .map(|l| spline.eval_deriv_unchecked(l, self.grid.a()))
            .collect();
        let derivs_b = (1..self.m)
            .map(|r| spline.eval_deriv_unchecked(r, self.grid.b()))
            .collect();
        (values, derivs_a, derivs_b)
    }
}
