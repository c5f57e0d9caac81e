//! Geometry abstraction used by the solver.
//!
//! Every manifold here is an embedded submanifold of `R^{n x p}` with the
//! induced trace metric `<A, B> = tr(AᵀB)`, so all norms are Frobenius norms.

use crate::error::{check_shape, Result};
use crate::linalg::Mat;

/// A point on the manifold, stored as its embedding in `R^{n x p}`.
pub type Point = Mat;
/// A tangent vector; its base point is tracked by the caller.
pub type Tangent = Mat;

pub trait Manifold {
    /// Embedding shape `(n, p)`.
    fn dims(&self) -> (usize, usize);

    fn name(&self) -> &'static str;

    /// Riemannian metric at `x`. The default is the embedded trace metric.
    fn inner(&self, x: &Point, a: &Tangent, b: &Tangent) -> Result<f64> {
        let dims = self.dims();
        check_shape(dims, x.shape())?;
        check_shape(dims, a.shape())?;
        check_shape(dims, b.shape())?;
        Ok(a.dot(b))
    }

    fn norm(&self, x: &Point, a: &Tangent) -> Result<f64> {
        Ok(libm::sqrt(self.inner(x, a, a)?.max(0.0)))
    }

    /// `R_x[xi]`. Must return `x` itself, bit for bit, when `xi` is zero.
    fn retract(&self, x: &Point, xi: &Tangent) -> Result<Point>;

    /// Orthogonal projection of an ambient matrix onto `T_x M`.
    fn project_tangent(&self, x: &Point, v: &Mat) -> Result<Tangent>;

    /// Transport of `xi` into the tangent space at `target`, where `target` is
    /// the foot `R_x[eta]` of the transport. All geometries in this crate use
    /// projection-based transports, so the default projects.
    fn transport_to(&self, target: &Point, xi: &Tangent) -> Result<Tangent> {
        self.project_tangent(target, xi)
    }

    /// Vector transport `T_eta[xi]` with the retraction as associated map.
    fn transport(&self, x: &Point, eta: &Tangent, xi: &Tangent) -> Result<Tangent> {
        check_shape(self.dims(), xi.shape())?;
        let y = self.retract(x, eta)?;
        self.transport_to(&y, xi)
    }

    /// Distance of `x` from the manifold's defining constraint.
    fn feasibility_gap(&self, x: &Point) -> f64;

    /// Size of the normal component of `z` at `x`.
    fn tangency_gap(&self, x: &Point, z: &Mat) -> f64;
}

impl<M: Manifold + ?Sized> Manifold for &M {
    fn dims(&self) -> (usize, usize) {
        (**self).dims()
    }
    fn name(&self) -> &'static str {
        (**self).name()
    }
    fn inner(&self, x: &Point, a: &Tangent, b: &Tangent) -> Result<f64> {
        (**self).inner(x, a, b)
    }
    fn retract(&self, x: &Point, xi: &Tangent) -> Result<Point> {
        (**self).retract(x, xi)
    }
    fn project_tangent(&self, x: &Point, v: &Mat) -> Result<Tangent> {
        (**self).project_tangent(x, v)
    }
    fn transport_to(&self, target: &Point, xi: &Tangent) -> Result<Tangent> {
        (**self).transport_to(target, xi)
    }
    fn transport(&self, x: &Point, eta: &Tangent, xi: &Tangent) -> Result<Tangent> {
        (**self).transport(x, eta, xi)
    }
    fn feasibility_gap(&self, x: &Point) -> f64 {
        (**self).feasibility_gap(x)
    }
    fn tangency_gap(&self, x: &Point, z: &Mat) -> f64 {
        (**self).tangency_gap(x, z)
    }
}

/// Rescales a transported vector so that its norm does not exceed `bound`.
///
/// A zero `transported` vector stays zero.
pub fn limit_norm(transported: Tangent, transported_norm: f64, bound: f64) -> Tangent {
    if transported_norm <= bound || transported_norm == 0.0 {
        transported
    } else {
        transported * (bound / transported_norm)
    }
}

/// Scaled vector transport: `T_eta[xi]`, shrunk to `|xi|` whenever the plain
/// transport would lengthen it. The result never expands the input norm.
pub fn scaled_transport<M: Manifold + ?Sized>(
    geom: &M,
    x: &Point,
    eta: &Tangent,
    xi: &Tangent,
) -> Result<Tangent> {
    let bound = geom.norm(x, xi)?;
    let y = geom.retract(x, eta)?;
    scaled_transport_to(geom, &y, xi, bound)
}

/// [`scaled_transport`] when the foot `y = R_x[eta]` is already known.
/// `xi_norm` is the norm of `xi` at its original base point.
pub fn scaled_transport_to<M: Manifold + ?Sized>(
    geom: &M,
    y: &Point,
    xi: &Tangent,
    xi_norm: f64,
) -> Result<Tangent> {
    let t = geom.transport_to(y, xi)?;
    let tn = geom.norm(y, &t)?;
    Ok(limit_norm(t, tn, xi_norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::Euclidean;

    #[test]
    fn trace_inner_product_by_hand() {
        let e = Euclidean::new(2, 2);
        let x = Mat::zeros(2, 2);
        let a = Mat::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = Mat::identity(2, 2);
        assert_eq!(e.inner(&x, &a, &b).unwrap(), 5.0);
        let z = Mat::zeros(2, 2);
        assert_eq!(e.inner(&x, &z, &z).unwrap(), 0.0);

        let e1 = Euclidean::new(2, 1);
        let x1 = Mat::zeros(2, 1);
        let u = Mat::from_column_slice(2, 1, &[1.0, 0.0]);
        let v = Mat::from_column_slice(2, 1, &[0.0, 1.0]);
        assert_eq!(e1.inner(&x1, &u, &v).unwrap(), 0.0);
    }

    #[test]
    fn inner_rejects_shape_mismatch() {
        let e = Euclidean::new(2, 2);
        let x = Mat::zeros(2, 2);
        let a = Mat::zeros(2, 1);
        assert!(matches!(
            e.inner(&x, &a, &x),
            Err(crate::Error::Dimension { .. })
        ));
    }

    #[test]
    fn limit_norm_rescales_expanding_output() {
        let t = Mat::from_column_slice(2, 1, &[0.0, 4.0]);
        let out = limit_norm(t, 4.0, 2.0);
        assert_eq!(out.norm(), 2.0);
        let z = Mat::zeros(2, 1);
        assert_eq!(limit_norm(z.clone(), 0.0, 1.0), z);
        let small = Mat::from_column_slice(2, 1, &[0.3, 0.4]);
        assert_eq!(limit_norm(small.clone(), 0.5, 1.0), small);
    }
}
