use crate::error::{check_shape, Error, Result};
use crate::linalg::Mat;
use crate::manifold::{Manifold, Point, Tangent};

use super::is_zero;

/// Oblique manifold `OB(n, p)`: `n x p` matrices whose columns have unit norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oblique {
    n: usize,
    p: usize,
}

impl Oblique {
    pub fn new(n: usize, p: usize) -> Self {
        Self { n, p }
    }
}

impl Manifold for Oblique {
    fn dims(&self) -> (usize, usize) {
        (self.n, self.p)
    }

    fn name(&self) -> &'static str {
        "oblique"
    }

    /// `(X + xi) ddiag((X + xi)ᵀ(X + xi))^{-1/2}`, i.e. column normalization.
    fn retract(&self, x: &Point, xi: &Tangent) -> Result<Point> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), xi.shape())?;
        if is_zero(xi) {
            return Ok(x.clone());
        }
        let mut y = x + xi;
        for mut c in y.column_iter_mut() {
            let nrm = c.norm();
            if !(nrm > 0.0) || !nrm.is_finite() {
                return Err(Error::SingularRetraction("X + xi has a zero column"));
            }
            c /= nrm;
        }
        Ok(y)
    }

    /// `V - X ddiag(XᵀV)`.
    fn project_tangent(&self, x: &Point, v: &Mat) -> Result<Tangent> {
        check_shape(self.dims(), x.shape())?;
        check_shape(self.dims(), v.shape())?;
        let mut out = v.clone();
        for j in 0..self.p {
            let d = x.column(j).dot(&v.column(j));
            out.column_mut(j).axpy(-d, &x.column(j), 1.0);
        }
        Ok(out)
    }

    fn feasibility_gap(&self, x: &Point) -> f64 {
        let sq: f64 = x
            .column_iter()
            .map(|c| {
                let d = c.norm_squared() - 1.0;
                d * d
            })
            .sum();
        libm::sqrt(sq)
    }

    fn tangency_gap(&self, x: &Point, z: &Mat) -> f64 {
        let sq: f64 = x
            .column_iter()
            .zip(z.column_iter())
            .map(|(a, b)| {
                let d = a.dot(&b);
                d * d
            })
            .sum();
        libm::sqrt(sq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::Sphere;

    #[test]
    fn retract_normalizes_columns_by_hand() {
        let ob = Oblique::new(2, 2);
        let x = Mat::identity(2, 2);
        // X + xi = [[3, 0], [4, 2]]
        let xi = Mat::from_row_slice(2, 2, &[2.0, 0.0, 4.0, 1.0]);
        let r = ob.retract(&x, &xi).unwrap();
        let expect = Mat::from_row_slice(2, 2, &[0.6, 0.0, 0.8, 1.0]);
        assert!((r - expect).norm() < 1e-16);
        assert_eq!(ob.retract(&x, &Mat::zeros(2, 2)).unwrap(), x);
    }

    #[test]
    fn zero_column_is_singular() {
        let ob = Oblique::new(2, 2);
        let x = Mat::identity(2, 2);
        let xi = Mat::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            ob.retract(&x, &xi),
            Err(Error::SingularRetraction(_))
        ));
    }

    #[test]
    fn single_column_matches_sphere() {
        let ob = Oblique::new(3, 1);
        let sp = Sphere::new(3);
        let x = Mat::from_column_slice(3, 1, &[0.0, 0.6, 0.8]);
        let xi = Mat::from_column_slice(3, 1, &[1.0, 0.8, -0.6]);
        let eta = Mat::from_column_slice(3, 1, &[-0.5, 0.4, -0.3]);
        assert_eq!(ob.retract(&x, &xi).unwrap(), sp.retract(&x, &xi).unwrap());
        let a = ob.transport(&x, &eta, &xi).unwrap();
        let b = sp.transport(&x, &eta, &xi).unwrap();
        assert!((a - b).norm() < 1e-15);
    }
}
