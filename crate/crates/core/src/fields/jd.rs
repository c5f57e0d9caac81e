use alloc::vec::Vec;

use crate::error::{check_shape, Error, Result};
use crate::field::VectorField;
use crate::linalg::{off, Mat};
use crate::manifold::{Point, Tangent};

/// Joint diagonalization on `OB(n, p)`.
///
/// The objective is `phi(X) = Σ ‖off(XᵀC_iX)‖²` and the field is its
/// Riemannian gradient `Σ 4 C_i X off(XᵀC_iX)`, projected onto the tangent
/// space so it is tangent in floating point.
#[derive(Debug, Clone)]
pub struct JdField {
    cs: Vec<Mat>,
    p: usize,
}

impl JdField {
    pub fn new(cs: Vec<Mat>, p: usize) -> Result<Self> {
        let n = match cs.first() {
            Some(c) => c.nrows(),
            None => return Err(Error::Domain("need at least one matrix")),
        };
        for c in &cs {
            if c.shape() != (n, n) {
                return Err(Error::Domain("matrices must be square and of equal size"));
            }
            let asym = (c - c.transpose()).norm();
            if asym > 1e-12 * c.norm() {
                return Err(Error::Domain("matrices must be symmetric"));
            }
        }
        Ok(Self { cs, p })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.cs[0].nrows(), self.p)
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.cs
    }

    /// `Σ ‖off(XᵀC_iX)‖²`.
    pub fn objective(&self, x: &Point) -> f64 {
        self.cs
            .iter()
            .map(|c| off(&x.tr_mul(&(c * x))).norm_squared())
            .sum()
    }

    /// `Σ 4 C_i X off(XᵀC_iX)` before projection.
    pub fn ambient_gradient(&self, x: &Point) -> Mat {
        let mut g = Mat::zeros(x.nrows(), x.ncols());
        for c in &self.cs {
            let cx = c * x;
            let m = off(&x.tr_mul(&cx));
            g.gemm(4.0, &cx, &m, 1.0);
        }
        g
    }
}

impl VectorField for JdField {
    fn eval(&self, x: &Point) -> Result<Tangent> {
        check_shape(self.dims(), x.shape())?;
        let mut g = self.ambient_gradient(x);
        for j in 0..g.ncols() {
            let d = x.column(j).dot(&g.column(j));
            g.column_mut(j).axpy(-d, &x.column(j), 1.0);
        }
        Ok(g)
    }
}
