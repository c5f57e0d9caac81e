use crate::error::{check_shape, Result};
use crate::linalg::{polar_factor, qf, sym, Mat};
use crate::manifold::{Manifold, Point, Tangent};

use super::is_zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StiefelRetraction {
    /// `qf(X + xi)`, the Q factor with positive `diag(R)`.
    Qr,
    /// `(X + xi)((X + xi)ᵀ(X + xi))^{-1/2}`.
    Polar,
}

/// Stiefel manifold `St(n, p)` of `n x p` matrices with orthonormal columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stiefel {
    n: usize,
    p: usize,
    retraction: StiefelRetraction,
}

impl Stiefel {
    pub fn new(n: usize, p: usize, retraction: StiefelRetraction) -> Self {
        assert!(p <= n, "Stiefel manifold needs p <= n");
        Self { n, p, retraction }
    }

    pub fn retraction(&self) -> StiefelRetraction {
        self.retraction
    }
}

impl Manifold for Stiefel {
    fn dims(&self) -> (usize, usize) {
        (self.n, self.p)
    }

    fn name(&self) -> &'static str {
        match self.retraction {
            StiefelRetraction::Qr => "stiefel-qr",
            StiefelRetraction::Polar => "stiefel-polar",
        }
    }

    fn retract(&self, x: &Point, xi: &Tangent) -> Result<Point> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), xi.shape())?;
        if is_zero(xi) {
            return Ok(x.clone());
        }
        let w = x + xi;
        match self.retraction {
            StiefelRetraction::Qr => {
                qf(&w).map_err(|_| crate::Error::SingularRetraction("X + xi is rank deficient"))
            }
            StiefelRetraction::Polar => polar_factor(&w),
        }
    }

    fn project_tangent(&self, x: &Point, v: &Mat) -> Result<Tangent> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), v.shape())?;
        Ok(v - x * sym(&x.tr_mul(v)))
    }

    fn feasibility_gap(&self, x: &Point) -> f64 {
        (x.tr_mul(x) - Mat::identity(self.p, self.p)).norm()
    }

    fn tangency_gap(&self, x: &Point, z: &Mat) -> f64 {
        sym(&x.tr_mul(z)).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_step_returns_point_for_both_retractions() {
        for kind in [StiefelRetraction::Qr, StiefelRetraction::Polar] {
            let st = Stiefel::new(3, 3, kind);
            let i = Mat::identity(3, 3);
            assert_eq!(st.retract(&i, &Mat::zeros(3, 3)).unwrap(), i);
        }
    }

    #[test]
    fn rank_deficient_step_is_singular() {
        let x = Mat::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        // X + xi has two equal columns
        let xi = Mat::from_row_slice(3, 2, &[0.0, 1.0, 0.0, -1.0, 0.0, 0.0]);
        for kind in [StiefelRetraction::Qr, StiefelRetraction::Polar] {
            let st = Stiefel::new(3, 2, kind);
            assert!(matches!(
                st.retract(&x, &xi),
                Err(crate::Error::SingularRetraction(_))
            ));
        }
    }

    #[test]
    fn projection_is_tangent_and_idempotent() {
        let st = Stiefel::new(4, 2, StiefelRetraction::Qr);
        let x = qf(&Mat::from_fn(4, 2, |i, j| {
            (i as f64 + 1.0) * (j as f64 - 0.3) + 0.1 * (i * i) as f64
        }))
        .unwrap();
        let v = Mat::from_fn(4, 2, |i, j| (i as f64 * 0.37 - j as f64).cos());
        let t = st.project_tangent(&x, &v).unwrap();
        assert!(st.tangency_gap(&x, &t) < 1e-14);
        let t2 = st.project_tangent(&x, &t).unwrap();
        assert!((t2 - &t).norm() < 1e-14);
    }
}
