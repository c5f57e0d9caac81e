//! Tangent vector fields and their merit function `½‖F(X)‖²`.

use crate::error::Result;
use crate::manifold::{Point, Tangent};

pub trait VectorField {
    /// Evaluates `F(X)`, a tangent vector at `X`.
    fn eval(&self, x: &Point) -> Result<Tangent>;

    /// Riemannian gradient of the merit `½‖F‖²` at `x`, when the field can
    /// apply the adjoint of its Jacobian exactly. `fx` is `F(x)`.
    fn merit_gradient(&self, _x: &Point, _fx: &Tangent) -> Option<Result<Tangent>> {
        None
    }

    fn merit(&self, x: &Point) -> Result<f64> {
        Ok(merit_value(&self.eval(x)?))
    }

    /// Exact `sigma = <grad merit(x), F(x)>`, if available.
    fn exact_sigma(&self, x: &Point, fx: &Tangent) -> Option<Result<f64>> {
        self.merit_gradient(x, fx).map(|g| g.map(|g| g.dot(fx)))
    }
}

impl<F: VectorField + ?Sized> VectorField for &F {
    fn eval(&self, x: &Point) -> Result<Tangent> {
        (**self).eval(x)
    }
    fn merit_gradient(&self, x: &Point, fx: &Tangent) -> Option<Result<Tangent>> {
        (**self).merit_gradient(x, fx)
    }
    fn merit(&self, x: &Point) -> Result<f64> {
        (**self).merit(x)
    }
    fn exact_sigma(&self, x: &Point, fx: &Tangent) -> Option<Result<f64>> {
        (**self).exact_sigma(x, fx)
    }
}

/// `½‖F‖²` under the trace metric.
pub fn merit_value(fx: &Tangent) -> f64 {
    0.5 * fx.norm_squared()
}
