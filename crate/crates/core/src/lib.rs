//! Spectral residual method for finding zeros of tangent vector fields on
//! Riemannian manifolds.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! - [`manifold`]: the geometry abstraction (trace metric, retraction, vector
//!   transport, scaled transport).
//! - [`manifolds`]: the unit sphere, the Stiefel manifold (QR and polar
//!   retractions), the oblique manifold and flat Euclidean space.
//! - [`fields`]: the benchmark tangent vector fields (linear eigenvalue,
//!   nonlinear eigenvalue, joint diagonalization).
//! - [`solver`]: the residual iteration with Riemannian Barzilai-Borwein steps
//!   and Zhang-Hager non-monotone backtracking, and the Euclidean baseline.
//!
//! Points and tangent vectors are plain dense `n x p` matrices. A tangent vector
//! is only meaningful together with the point it is attached to; keeping track
//! of that pairing is the caller's job.
#![no_std]
// `!(a > b)` is used on purpose so that NaN fails the test
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod field;
pub mod fields;
pub mod linalg;
pub mod manifold;
pub mod manifolds;
pub mod solver;

pub use error::{Error, Result};
pub use field::VectorField;
pub use manifold::{Manifold, Point, Tangent};
pub use solver::{
    audit::TraceAudit, solve, BbMode, BreakdownMode, IterationRecord, SigmaMode, SolverConfig,
    SolverReport, Status,
};
