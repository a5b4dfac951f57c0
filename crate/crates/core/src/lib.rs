//! Lower bounds for measurable chromatic numbers of spheres and Euclidean
//! spaces via a generalized theta function, and upper bounds for spherical
//! codes via the Delsarte linear program.
//!
//! The pipeline: normalized Jacobi polynomials (three-term recurrence,
//! derivatives, zeros) feed the minimizer `m(t)` of the degree scan, which
//! gives the theta function of the distance graph `G(n, t)` in closed form.
//! Bessel first zeros give the `t -> 1` limit and the table of chromatic
//! bounds for Euclidean space. A dense two-phase simplex solver backs the
//! multi-distance dual LP and the Delsarte code bound.

pub mod bessel;
pub mod error;
pub mod jacobi;
pub mod limit;
pub mod lp;
pub mod theta;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
