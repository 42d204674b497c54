//! Certified lower and upper bounds on the positive semidefinite rank of
//! polytopes and nonnegative matrices, computed in exact arithmetic.
//!
//! The pipeline: build exact slack matrices of rational polytopes (`polytope`),
//! minimize rank over all Hadamard square roots by canonicalized sign-pattern
//! search (`hadamard`), verify psd-factorization certificates and assemble
//! certified rank intervals (`psdfact`), and apply the geometric classifiers
//! for small dimensions (`classify`) and stable-set polytopes (`stab`).
//!
//! All core math is generic over the scalar type; the concrete instantiations
//! used throughout are re-exported here.

pub mod hadamard;
pub mod io;
pub mod matrix;
pub mod num;
pub mod polytope;
pub mod psdfact;
pub mod sampling;
pub mod stab;

pub mod classify;

pub use matrix::{FieldMatrix, FloatMatrix, Matrix, RatMatrix, SurdMatrix};
pub use num::{FieldCtx, FieldElem, Rational, Surd};
