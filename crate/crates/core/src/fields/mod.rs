//! Benchmark vector fields.

mod eig;
mod jd;
mod nep;

pub use eig::{EigenField, EuclideanEigenField};
pub use jd::JdField;
pub use nep::NepField;
