//! Vandermonde and confluent Vandermonde determinants, ξ-column replacement,
//! and the determinant ratios every quasi-interpolation coefficient reduces
//! to. The production path assembles the matrix and eliminates with partial
//! pivoting; the closed-form products live in the tests as oracles.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Node list of a (confluent) Vandermonde matrix. A node with confluency `q`
/// contributes its power column plus the `q` derivative columns; the optional
/// replacement swaps one assembled column for a ξ vector.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSpec<T> {
    nodes: Vec<(T, usize)>,
    replaced: Option<(usize, Vec<T>)>,
}

impl<T: Scalar> NodeSpec<T> {
    pub fn new(nodes: Vec<(T, usize)>) -> Self {
        Self {
            nodes,
            replaced: None,
        }
    }

    pub fn simple(values: &[T]) -> Self {
        Self::new(values.iter().map(|&v| (v, 0)).collect())
    }

    pub fn with_replacement(mut self, column: usize, xi: Vec<T>) -> Self {
        self.replaced = Some((column, xi));
        self
    }

    pub fn nodes(&self) -> &[(T, usize)] {
        &self.nodes
    }

    /// Total column count `Σ (1 + confluency)`.
    pub fn dimension(&self) -> usize {
        self.nodes.iter().map(|&(_, q)| 1 + q).sum()
    }

    /// Column-major assembly. Row `k` of the derivative-order-`d` column of
    /// node `v` is `k!/(k-d)! v^{k-d}` for `k >= d`, zero above.
    fn assemble(&self) -> Result<Vec<Vec<T>>> {
        let dim = self.dimension();
        let mut cols = Vec::with_capacity(dim);
        for &(v, q) in &self.nodes {
            for d in 0..=q {
                let mut col = vec![T::zero(); dim];
                for (k, slot) in col.iter_mut().enumerate().skip(d) {
                    let mut falling = T::one();
                    for f in 0..d {
                        falling = falling * T::from_usize(k - f).unwrap();
                    }
                    *slot = falling * v.powi((k - d) as i32);
                }
                cols.push(col);
            }
        }
        if let Some((pos, xi)) = &self.replaced {
            if xi.len() != dim || *pos >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: xi.len(),
                });
            }
            cols[*pos] = xi.clone();
        }
        Ok(cols)
    }
}

/// `Π_{k<l} (values_l - values_k)`; the 1x1 case is 1.
pub fn vandermonde_det<T: Scalar>(values: &[T]) -> T {
    let mut det = T::one();
    for l in 1..values.len() {
        for k in 0..l {
            det = det * (values[l] - values[k]);
        }
    }
    det
}

/// Determinant of the confluent Vandermonde matrix of `spec` (no column
/// replacement allowed).
pub fn confluent_det<T: Scalar>(spec: &NodeSpec<T>) -> Result<T> {
    if spec.replaced.is_some() {
        return Err(Error::ReplacementPresent);
    }
    Ok(det_columns(spec.assemble()?))
}

/// Determinant with the ξ column substituted.
pub fn replaced_det<T: Scalar>(spec: &NodeSpec<T>) -> Result<T> {
    if spec.replaced.is_none() {
        return Err(Error::ReplacementMissing);
    }
    Ok(det_columns(spec.assemble()?))
}

/// `replaced_det(numerator) / confluent_det(denominator)`, the shape of all
/// quasi-interpolation coefficients. A vanishing denominator signals
/// coincident sampling points.
pub fn coefficient_ratio<T: Scalar>(numerator: &NodeSpec<T>, denominator: &NodeSpec<T>) -> Result<T> {
    let den = confluent_det(denominator)?;
    if den == T::zero() || !den.is_finite() {
        return Err(Error::SingularDenominator);
    }
    Ok(replaced_det(numerator)? / den)
}

/// Determinant by Gaussian elimination with partial pivoting on a
/// column-major matrix.
fn det_columns<T: Scalar>(mut cols: Vec<Vec<T>>) -> T {
    let n = cols.len();
    let mut det = T::one();
    for step in 0..n {
        let mut pivot = step;
        let mut best = cols[step][step].abs();
        for c in step + 1..n {
            let mag = cols[c][step].abs();
            if mag > best {
                best = mag;
                pivot = c;
            }
        }
        if best == T::zero() {
            return T::zero();
        }
        if pivot != step {
            cols.swap(step, pivot);
            det = -det;
        }
        let diag = cols[step][step];
        det = det * diag;
        for c in step + 1..n {
            let factor = cols[c][step] / diag;
            if factor != T::zero() {
                for r in step + 1..n {
                    let sub = factor * cols[step][r];
                    cols[c][r] = cols[c][r] - sub;
                }
            }
        }
    }
    det
}
