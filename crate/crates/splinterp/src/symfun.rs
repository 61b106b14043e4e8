//! Elementary symmetric polynomials, the ξ column vectors entering the
//! replaced Vandermonde determinants, and the brute-force identities used as
//! cross-checks.

use crate::error::{Error, Result};
use crate::grid::KnotVector;
use crate::scalar::{binomial, factorial, Scalar};

/// All elementary symmetric polynomials `σ^0 .. σ^len` of `values`, computed
/// by incremental polynomial multiplication (each value multiplies the
/// accumulated polynomial by `1 + v z`).
pub fn sigma_all<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); values.len() + 1];
    e[0] = T::one();
    for (i, &v) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = e[k] + v * e[k - 1];
        }
    }
    e
}

/// `σ^n(values)`: sum over all `n`-element subsets of the product of
/// entries. 1 for `n = 0`, 0 when `n` exceeds the sequence length.
pub fn sigma<T: Scalar>(n: usize, values: &[T]) -> T {
    if n > values.len() {
        T::zero()
    } else {
        sigma_all(values)[n]
    }
}

/// Column vector `[ξ^0, .., ξ^{m-1}]` built from the `m-1` knots following
/// index `ell`: `ξ^n = σ^n(x_{ell+1}, .., x_{ell+m-1}) / C(m-1, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct XiVector<T> {
    pub entries: Vec<T>,
    pub index: isize,
}

pub fn xi_vector<T: Scalar>(knots: &KnotVector<T>, m: usize, ell: isize) -> Result<XiVector<T>> {
    if !knots.contains_index(ell + 1) || !knots.contains_index(ell + m as isize - 1) {
        return Err(Error::IndexOutOfRange { index: ell });
    }
    let vals: Vec<T> = (1..m as isize).map(|k| knots.knot(ell + k)).collect();
    let e = sigma_all(&vals);
    let entries = (0..m).map(|n| e[n] / binomial::<T>(m - 1, n)).collect();
    Ok(XiVector { entries, index: ell })
}

/// Both sides of the symmetric-polynomial identity relating the alternating
/// σ-sum to the averaged product over all pairings of the two sequences:
///
/// lhs = Σ_ℓ (-1)^ℓ σ^{m-1-ℓ}(x) / C(m-1, ℓ) · σ^ℓ(y)
/// rhs = 1/(m-1)! Σ_{t a permutation of 1..m-1} Π_k (x_{t_k} - y_k)
///
/// The rhs enumerates every index tuple and keeps the ones with distinct
/// entries; tuples with repeats do not satisfy the identity (the inductive
/// argument splits the sum by which single slot carries the last index).
pub fn symm_identity_sides<T: Scalar>(xs: &[T], ys: &[T]) -> Result<(T, T)> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            actual: ys.len(),
        });
    }
    let d = xs.len(); // = m - 1
    let m = d + 1;

    let ex = sigma_all(xs);
    let ey = sigma_all(ys);
    let mut lhs = T::zero();
    let mut sign = T::one();
    for l in 0..=d {
        lhs = lhs + sign * ex[d - l] / binomial::<T>(d, l) * ey[l];
        sign = -sign;
    }

    // Full odometer enumeration of {0..d-1}^d, keeping permutations.
    let mut rhs = T::zero();
    let mut tuple = vec![0usize; d];
    loop {
        let mut seen = 0u64;
        let mut distinct = true;
        for &t in &tuple {
            if seen & (1 << t) != 0 {
                distinct = false;
                break;
            }
            seen |= 1 << t;
        }
        if distinct {
            let mut prod = T::one();
            for (k, &t) in tuple.iter().enumerate() {
                prod = prod * (xs[t] - ys[k]);
            }
            rhs = rhs + prod;
        }
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == d {
                return Ok((lhs, rhs / factorial::<T>(m - 1)));
            }
            tuple[pos] += 1;
            if tuple[pos] < d {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// `Σ_j (-1)^j r^{n-j} σ^j(t)`, the symmetric-function expansion of the
/// linear factorization `Π_j (r - t_j)`.
pub fn factor_expansion<T: Scalar>(r: T, ts: &[T]) -> T {
    let e = sigma_all(ts);
    let n = ts.len();
    let mut acc = T::zero();
    let mut sign = T::one();
    for (j, &ej) in e.iter().enumerate() {
        acc = acc + sign * r.powi((n - j) as i32) * ej;
        sign = -sign;
    }
    acc
}
