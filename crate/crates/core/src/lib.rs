//! Exact computations with test configurations of embedded projective
//! varieties.
//!
//! One-parameter subgroups of the diagonal torus are integer weight vectors.
//! Their classes are rational points of the spherical building of
//! `GL(H^0(X, L))`, and each such point is a test degeneration of the
//! embedded variety. This crate evaluates Hilbert-Mumford weights on those
//! points, computes flat limits and Donaldson-Futaki invariants from
//! homogeneous ideals, screens almost-trivial degenerations, and finds the
//! optimal destabilizing direction by an exact minimum-norm-point search.
//!
//! All arithmetic is exact. Rationals are `num_rational::BigRational`.
//!
//! Sign conventions used throughout:
//!
//! * a weight vector `a` acts on coordinates by `t . X_i = t^{a_i} X_i`;
//! * flat limits are taken as `t -> 0`, so initial forms keep the terms of
//!   *minimal* `<a, alpha>`;
//! * the Hilbert-Mumford weight is `mu(S, a) = max_{chi in S} -<a, chi>`, and a
//!   direction destabilizes when its normalized weight is negative.

pub mod algebra;
pub mod building;
pub mod error;
pub mod kempf;
pub mod limits;
pub mod opsub;
pub mod report;
pub mod stability;
pub mod testconfig;

pub use error::{Error, Result};
