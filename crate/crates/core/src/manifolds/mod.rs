//! Concrete geometries: unit sphere, Stiefel, oblique and flat space.

mod euclidean;
mod oblique;
mod sphere;
mod stiefel;

pub use euclidean::Euclidean;
pub use oblique::Oblique;
pub use sphere::Sphere;
pub use stiefel::{Stiefel, StiefelRetraction};

use crate::linalg::Mat;

pub(crate) fn is_zero(m: &Mat) -> bool {
    m.iter().all(|v| *v == 0.0)
}
