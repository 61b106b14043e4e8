//! Local polynomial spline interpolation on bounded intervals, for arbitrary
//! spline order `m >= 3`.
//!
//! Three operators are built on a strictly increasing sample grid
//! `y_0 < .. < y_N`:
//!
//! * a quasi-interpolation operator that reproduces polynomials of degree
//!   `< m` with purely local coefficient formulas (determinant ratios over
//!   sliding sample windows, no global solve),
//! * a local Hermite interpolation operator that matches values at every
//!   sample and derivatives of orders `1..m-1` at both endpoints,
//! * their blend, which combines the polynomial reproduction of the first
//!   with the interpolation conditions of the second and keeps both local.
//!
//! Locality means the spline's value near a point depends only on nearby
//! samples, so the blend can be evaluated in a streaming fashion with a fixed
//! lookahead. The crate also computes the mesh diagnostics and a-priori error
//! bounds associated with the scheme.
//!
//! The numeric type is generic over [`Scalar`] (`f64` or `f32`); the `F64`
//! aliases below are the common instantiation.

pub mod blend;
pub mod bounds;
pub mod bspline;
pub mod error;
pub mod grid;
pub mod localinterp;
pub mod quasi;
pub mod scalar;
pub mod spline;
pub mod symfun;
pub mod vandermonde;

pub use blend::{build_blend, divided_difference_derivs, BlendOperator, DerivativeSource, HermiteData};
pub use bounds::{empirical_sup_error, error_bound, mesh_stats, ErrorRegion, MeshStats};
pub use bspline::{truncated_power_oracle, BSplineBasis};
pub use error::{Error, Result};
pub use grid::{midpoint_knots, refined_knots, KnotVector, RefinedKnots, SamplingGrid};
pub use localinterp::{build_local, LocalOperator};
pub use quasi::{build_quasi, CoefficientCase, Molecule, QuasiOperator};
pub use scalar::Scalar;
pub use spline::SplineFunction;
pub use symfun::{factor_expansion, sigma, xi_vector, XiVector};
pub use vandermonde::{
    coefficient_ratio, confluent_det, replaced_det, vandermonde_det, NodeSpec,
};

/// `f64` instantiations of the main types.
pub type SamplingGridF64 = SamplingGrid<f64>;
pub type KnotVectorF64 = KnotVector<f64>;
pub type SplineFunctionF64 = SplineFunction<f64>;
pub type HermiteDataF64 = HermiteData<f64>;
pub type QuasiOperatorF64 = QuasiOperator<f64>;
pub type LocalOperatorF64 = LocalOperator<f64>;
pub type BlendOperatorF64 = BlendOperator<f64>;
pub type MeshStatsF64 = MeshStats<f64>;
