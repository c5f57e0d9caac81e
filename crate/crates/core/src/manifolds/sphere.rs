use crate::error::{check_shape, Error, Result};
use crate::linalg::Mat;
use crate::manifold::{Manifold, Point, Tangent};

use super::is_zero;

/// Unit sphere `S^{n-1}` in `R^n`, points stored as `n x 1` columns.
///
/// Retraction is normalization of `x + xi`; transport projects onto the
/// tangent space at the retracted point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sphere {
    n: usize,
}

impl Sphere {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Manifold for Sphere {
    fn dims(&self) -> (usize, usize) {
        (self.n, 1)
    }

    fn name(&self) -> &'static str {
        "sphere"
    }

    fn retract(&self, x: &Point, xi: &Tangent) -> Result<Point> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), xi.shape())?;
        if is_zero(xi) {
            return Ok(x.clone());
        }
        let y = x + xi;
        let nrm = y.norm();
        if !(nrm > 0.0) || !nrm.is_finite() {
            return Err(Error::SingularRetraction("x + xi has no direction"));
        }
        Ok(y / nrm)
    }

    fn project_tangent(&self, x: &Point, v: &Mat) -> Result<Tangent> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), v.shape())?;
        Ok(v - x * x.dot(v))
    }

    fn feasibility_gap(&self, x: &Point) -> f64 {
        (x.norm() - 1.0).abs()
    }

    fn tangency_gap(&self, x: &Point, z: &Mat) -> f64 {
        x.dot(z).abs()
    }
}
