use crate::error::{check_shape, Error, Result};
use crate::field::VectorField;
use crate::linalg::{sym, CsrMatrix, Mat, SymOperator};
use crate::manifold::{Point, Tangent};

/// `F(x) = Ax - (xᵀAx)x` on the unit sphere. Zeros are unit eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenField {
    a: SymOperator,
}

impl EigenField {
    /// Dense symmetric `A`; the input is symmetrized.
    pub fn dense(a: Mat) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::Domain("matrix must be square"));
        }
        Ok(Self {
            a: SymOperator::Dense(sym(&a)),
        })
    }

    /// Sparse `A`, assumed already symmetric.
    pub fn sparse(a: CsrMatrix) -> Result<Self> {
        let (n, m) = a.shape();
        if n != m {
            return Err(Error::Domain("matrix must be square"));
        }
        Ok(Self {
            a: SymOperator::Sparse(a),
        })
    }

    pub fn operator(&self) -> &SymOperator {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Rayleigh quotient `xᵀAx / xᵀx`.
    pub fn rayleigh(&self, x: &Point) -> f64 {
        x.dot(&self.a.apply(x)) / x.norm_squared()
    }
}

impl VectorField for EigenField {
    fn eval(&self, x: &Point) -> Result<Tangent> {
        check_shape((self.dim(), 1), x.shape())?;
        let ax = self.a.apply(x);
        let r = x.dot(&ax);
        Ok(ax - x * r)
    }

    // With the ambient extension F(x) = Ax - (xᵀAx)x the Jacobian is
    // A - (xᵀAx)I - 2x(Ax)ᵀ, so JᵀF = AF - rF - 2Ax(xᵀF); project onto T_x.
    fn merit_gradient(&self, x: &Point, fx: &Tangent) -> Option<Result<Tangent>> {
        if let Err(e) = check_shape((self.dim(), 1), x.shape()) {
            return Some(Err(e));
        }
        let ax = self.a.apply(x);
        let r = x.dot(&ax);
        let af = self.a.apply(fx);
        let g = af - fx * r - ax * (2.0 * x.dot(fx));
        let xg = x.dot(&g);
        Some(Ok(g - x * xg))
    }
}

/// `G(x) = Ax - r(x)x` on `R^n` with `r(x) = xᵀAx / xᵀx`: the eigenvalue
/// problem as an unconstrained nonlinear system.
#[derive(Debug, Clone)]
pub struct EuclideanEigenField {
    a: SymOperator,
}

impl EuclideanEigenField {
    pub fn new(field: &EigenField) -> Self {
        Self { a: field.a.clone() }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

impl VectorField for EuclideanEigenField {
    fn eval(&self, x: &Point) -> Result<Tangent> {
        check_shape((self.dim(), 1), x.shape())?;
        let xx = x.norm_squared();
        if xx == 0.0 {
            return Err(Error::Domain("Rayleigh quotient undefined at x = 0"));
        }
        let ax = self.a.apply(x);
        let r = x.dot(&ax) / xx;
        Ok(ax - x * r)
    }

    // JG = A - rI - x ∇rᵀ with ∇r = 2G/xᵀx.
    fn merit_gradient(&self, x: &Point, gx: &Tangent) -> Option<Result<Tangent>> {
        if let Err(e) = check_shape((self.dim(), 1), x.shape()) {
            return Some(Err(e));
        }
        let xx = x.norm_squared();
        if xx == 0.0 {
            return Some(Err(Error::Domain("Rayleigh quotient undefined at x = 0")));
        }
        let r = x.dot(&self.a.apply(x)) / xx;
        let ag = self.a.apply(gx);
        Some(Ok(ag - gx * r - gx * (2.0 * x.dot(gx) / xx)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn col(v: &[f64]) -> Mat {
        Mat::from_column_slice(v.len(), 1, v)
    }

    #[test]
    fn eval_by_hand() {
        let f = EigenField::dense(Mat::from_diagonal(&nalgebra::DVector::from_vec(vec![
            2.0, 1.0,
        ])))
        .unwrap();
        let h = 1.0 / 2f64.sqrt();
        let fx = f.eval(&col(&[h, h])).unwrap();
        // Ax = (2h, h), xᵀAx = 1.5
        assert!((fx - col(&[0.5 * h, -0.5 * h])).norm() < 1e-15);
        assert_eq!(f.eval(&col(&[0.0, 1.0])).unwrap(), col(&[0.0, 0.0]));
    }

    #[test]
    fn identity_has_every_unit_vector_as_zero() {
        let f = EigenField::dense(Mat::identity(3, 3)).unwrap();
        let x = col(&[0.0, 0.6, 0.8]);
        assert!(f.eval(&x).unwrap().norm() < 1e-16);
    }

    #[test]
    fn euclidean_field_is_scale_invariant() {
        let a = Mat::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0]));
        let g = EuclideanEigenField::new(&EigenField::dense(a).unwrap());
        assert_eq!(g.eval(&col(&[2.0, 0.0])).unwrap(), col(&[0.0, 0.0]));
        assert!(matches!(g.eval(&col(&[0.0, 0.0])), Err(Error::Domain(_))));
    }
}
