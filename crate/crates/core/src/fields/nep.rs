use nalgebra::DVector;

use crate::error::{check_shape, Error, Result};
use crate::field::VectorField;
use crate::linalg::{Mat, SymTridiagonal};
use crate::manifold::{Point, Tangent};

/// Nonlinear eigenvalue field on `St(n, p)`:
///
/// `F(X) = H(X)X - XXᵀH(X)X` with `H(X) = L + mu * Diag(L⁻¹ rho(X))` and
/// `rho(X) = diag(XXᵀ)`.
///
/// `L` is the one-dimensional Dirichlet Laplacian `tridiag(-1, 2, -1)`, which is
/// nonsingular, so its pseudo-inverse is the inverse. The `LDLᵀ` factors are
/// computed once and `L⁻¹ rho` is a tridiagonal solve per evaluation.
#[derive(Debug, Clone)]
pub struct NepField {
    lap: SymTridiagonal,
    mu: f64,
    p: usize,
}

impl NepField {
    pub fn new(n: usize, p: usize, mu: f64) -> Result<Self> {
        Self::with_laplacian(SymTridiagonal::laplacian_1d(n)?, p, mu)
    }

    pub fn with_laplacian(lap: SymTridiagonal, p: usize, mu: f64) -> Result<Self> {
        if !(mu >= 0.0) || !mu.is_finite() {
            return Err(Error::Domain(
                "coupling mu must be a nonnegative finite number",
            ));
        }
        Ok(Self { lap, mu, p })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.lap.dim(), self.p)
    }

    pub fn laplacian(&self) -> &SymTridiagonal {
        &self.lap
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `rho(X) = diag(XXᵀ)`, the squared row norms.
    pub fn density(x: &Point) -> DVector<f64> {
        DVector::from_iterator(x.nrows(), x.row_iter().map(|r| r.norm_squared()))
    }

    /// `L⁻¹ rho(X)`.
    pub fn potential(&self, x: &Point) -> DVector<f64> {
        self.lap.solve(&Self::density(x))
    }

    /// Dense `H(X)`.
    pub fn h_matrix(&self, x: &Point) -> Mat {
        let mut h = self.lap.to_dense();
        let v = self.potential(x);
        for i in 0..h.nrows() {
            h[(i, i)] += self.mu * v[i];
        }
        h
    }

    fn apply_h(&self, potential: &DVector<f64>, y: &Mat) -> Mat {
        let mut out = self.lap.mul_mat(y);
        for j in 0..y.ncols() {
            for i in 0..y.nrows() {
                out[(i, j)] += self.mu * potential[i] * y[(i, j)];
            }
        }
        out
    }

    /// `Λ = XᵀH(X)X`, the block of eigenvalues at a solution.
    pub fn block_eigenvalues(&self, x: &Point) -> Mat {
        let hx = self.apply_h(&self.potential(x), x);
        x.tr_mul(&hx)
    }
}

impl VectorField for NepField {
    fn eval(&self, x: &Point) -> Result<Tangent> {
        check_shape(self.dims(), x.shape())?;
        let hx = self.apply_h(&self.potential(x), x);
        let lam = x.tr_mul(&hx);
        Ok(hx - x * lam)
    }
}
