use crate::error::{check_shape, Result};
use crate::linalg::Mat;
use crate::manifold::{Manifold, Point, Tangent};

/// Flat space `R^{n x p}`: identity retraction `x + xi` and identity transport.
/// Running the solver here gives the Euclidean spectral residual iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Euclidean {
    n: usize,
    p: usize,
}

impl Euclidean {
    pub fn new(n: usize, p: usize) -> Self {
        Self { n, p }
    }
}

impl Manifold for Euclidean {
    fn dims(&self) -> (usize, usize) {
        (self.n, self.p)
    }

    fn name(&self) -> &'static str {
        "euclidean"
    }

    fn retract(&self, x: &Point, xi: &Tangent) -> Result<Point> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), xi.shape())?;
        Ok(x + xi)
    }

    fn project_tangent(&self, x: &Point, v: &Mat) -> Result<Tangent> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), v.shape())?;
        Ok(v.clone())
    }

    fn feasibility_gap(&self, _x: &Point) -> f64 {
        0.0
    }

    fn tangency_gap(&self, _x: &Point, _z: &Mat) -> f64 {
        0.0
    }
}
