mod common;

use common::{geometries, randn, random_point, random_tangent, rng};
use proptest::prelude::*;
use rsane::linalg::{qr_positive, sym, Mat};
use rsane::manifold::scaled_transport;
use rsane::manifolds::{Oblique, Sphere, Stiefel, StiefelRetraction};
use rsane::Manifold;

#[test]
fn zero_step_returns_the_same_point() {
    let mut r = rng(1);
    for g in geometries() {
        for _ in 0..20 {
            let x = random_point(g.as_ref(), &mut r);
            let (n, p) = g.dims();
            assert_eq!(g.retract(&x, &Mat::zeros(n, p)).unwrap(), x, "{}", g.name());
        }
    }
}

#[test]
fn retractions_stay_feasible() {
    let mut r = rng(2);
    for g in geometries() {
        let mut worst = 0f64;
        for i in 0..1000 {
            let x = random_point(g.as_ref(), &mut r);
            let scale = [1e-6, 1e-2, 1.0, 10.0][i % 4];
            let xi = random_tangent(g.as_ref(), &x, &mut r, scale);
            worst = worst.max(g.feasibility_gap(&g.retract(&x, &xi).unwrap()));
        }
        assert!(worst <= 1e-12, "{}: {worst:e}", g.name());
    }
}

#[test]
fn retraction_is_first_order_rigid() {
    // the central difference removes the curvature term, leaving O(t^2)
    let t = 1e-5;
    let mut r = rng(3);
    for g in geometries() {
        for _ in 0..50 {
            let x = random_point(g.as_ref(), &mut r);
            let xi = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let xi = &xi / xi.norm();
            let plus = g.retract(&x, &(&xi * t)).unwrap();
            let minus = g.retract(&x, &(&xi * -t)).unwrap();
            let err = ((plus - minus) / (2.0 * t) - &xi).norm();
            assert!(err < 1e-8, "{}: {err:e}", g.name());
        }
    }
}

#[test]
fn forward_difference_error_shrinks_linearly() {
    let mut r = rng(4);
    for g in geometries() {
        let x = random_point(g.as_ref(), &mut r);
        let xi = random_tangent(g.as_ref(), &x, &mut r, 1.0);
        let err = |t: f64| ((g.retract(&x, &(&xi * t)).unwrap() - &x) / t - &xi).norm();
        let ratio = err(1e-3) / err(1e-4);
        assert!((5.0..20.0).contains(&ratio), "{}: ratio {ratio}", g.name());
    }
}

#[test]
fn transport_along_zero_is_identity() {
    let mut r = rng(5);
    for g in geometries() {
        let (n, p) = g.dims();
        for _ in 0..1000 {
            let x = random_point(g.as_ref(), &mut r);
            let xi = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let out = g.transport(&x, &Mat::zeros(n, p), &xi).unwrap();
            assert!(
                (out - &xi).norm() <= 1e-12 * xi.norm().max(1.0),
                "{}",
                g.name()
            );
        }
    }
}

#[test]
fn transport_is_linear() {
    let mut r = rng(6);
    for g in geometries() {
        for _ in 0..1000 {
            let x = random_point(g.as_ref(), &mut r);
            let eta = random_tangent(g.as_ref(), &x, &mut r, 0.5);
            let xi = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let zeta = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let (a, b) = (randn(&mut r, 1, 1)[0], randn(&mut r, 1, 1)[0]);
            let lhs = g.transport(&x, &eta, &(&xi * a + &zeta * b)).unwrap();
            let rhs =
                g.transport(&x, &eta, &xi).unwrap() * a + g.transport(&x, &eta, &zeta).unwrap() * b;
            let scale = (a.abs() * xi.norm() + b.abs() * zeta.norm()).max(1.0);
            assert!((lhs - rhs).norm() <= 1e-12 * scale, "{}", g.name());
        }
    }
}

#[test]
fn transport_lands_in_the_target_tangent_space() {
    let mut r = rng(7);
    for g in geometries() {
        for _ in 0..200 {
            let x = random_point(g.as_ref(), &mut r);
            let eta = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let xi = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let y = g.retract(&x, &eta).unwrap();
            let out = g.transport(&x, &eta, &xi).unwrap();
            assert!(
                g.tangency_gap(&y, &out) <= 1e-12 * xi.norm().max(1.0),
                "{}",
                g.name()
            );
        }
    }
}

#[test]
fn scaled_transport_never_expands() {
    let mut r = rng(8);
    for g in geometries() {
        for i in 0..1000 {
            let x = random_point(g.as_ref(), &mut r);
            let eta = random_tangent(g.as_ref(), &x, &mut r, [0.1, 1.0, 5.0][i % 3]);
            let xi = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let out = scaled_transport(g.as_ref(), &x, &eta, &xi).unwrap();
            assert!(out.norm() <= xi.norm() + 1e-14, "{}", g.name());
        }
    }
}

#[test]
fn projection_transports_do_not_expand_on_their_own() {
    let mut r = rng(9);
    let geoms: Vec<Box<dyn Manifold>> = vec![
        Box::new(Sphere::new(50)),
        Box::new(Stiefel::new(20, 5, StiefelRetraction::Qr)),
        Box::new(Stiefel::new(20, 5, StiefelRetraction::Polar)),
    ];
    for g in geoms {
        for _ in 0..1000 {
            let x = random_point(g.as_ref(), &mut r);
            let eta = random_tangent(g.as_ref(), &x, &mut r, 2.0);
            let xi = random_tangent(g.as_ref(), &x, &mut r, 1.0);
            let out = g.transport(&x, &eta, &xi).unwrap();
            assert!(out.norm() <= xi.norm() * (1.0 + 1e-14), "{}", g.name());
        }
    }
}

#[test]
fn stiefel_transport_matches_projection_formula() {
    let mut r = rng(10);
    for kind in [StiefelRetraction::Qr, StiefelRetraction::Polar] {
        let g = Stiefel::new(12, 4, kind);
        for _ in 0..100 {
            let x = random_point(&g, &mut r);
            let eta = random_tangent(&g, &x, &mut r, 1.0);
            let xi = random_tangent(&g, &x, &mut r, 1.0);
            let y = g.retract(&x, &eta).unwrap();
            let oracle = &xi - &y * sym(&(y.transpose() * &xi));
            assert!((g.transport(&x, &eta, &xi).unwrap() - oracle).norm() <= 1e-12);
        }
    }
}

#[test]
fn oblique_with_one_column_matches_sphere() {
    let mut r = rng(11);
    let (s, o) = (Sphere::new(7), Oblique::new(7, 1));
    for _ in 0..100 {
        let x = random_point(&s, &mut r);
        let eta = random_tangent(&s, &x, &mut r, 1.0);
        let xi = random_tangent(&s, &x, &mut r, 1.0);
        assert!((s.retract(&x, &eta).unwrap() - o.retract(&x, &eta).unwrap()).norm() <= 1e-15);
        let ts = s.transport(&x, &eta, &xi).unwrap();
        assert!((ts - o.transport(&x, &eta, &xi).unwrap()).norm() <= 1e-14);
    }
}

#[test]
fn polar_retraction_matches_svd_oracle() {
    let mut r = rng(12);
    let g = Stiefel::new(20, 5, StiefelRetraction::Polar);
    for _ in 0..200 {
        let x = random_point(&g, &mut r);
        let xi = random_tangent(&g, &x, &mut r, 1.0);
        let w = &x + &xi;
        let svd = w.clone().svd(true, true);
        let oracle = svd.u.unwrap() * svd.v_t.unwrap();
        assert!((g.retract(&x, &xi).unwrap() - oracle).norm() <= 1e-10);
    }
}

#[test]
fn qf_has_positive_diagonal_on_random_matrices() {
    let mut r = rng(13);
    for i in 0..1000 {
        let (n, p) = [(6, 3), (20, 5), (9, 9), (40, 1)][i % 4];
        let w = randn(&mut r, n, p);
        let (q, rr) = qr_positive(&w).unwrap();
        assert!((q.transpose() * &q - Mat::identity(p, p)).norm() <= 1e-12);
        assert!((&q * &rr - &w).norm() <= 1e-12 * w.norm());
        assert!((0..p).all(|j| rr[(j, j)] > 0.0));
        assert!((0..p).all(|j| (j + 1..p).all(|i| rr[(i, j)] == 0.0)));
    }
}

#[test]
fn projection_residual_is_normal() {
    // the projected standard basis spans the tangent space
    let mut r = rng(14);
    for g in geometries() {
        let (n, p) = g.dims();
        let x = random_point(g.as_ref(), &mut r);
        let v = randn(&mut r, n, p);
        let normal = &v - g.project_tangent(&x, &v).unwrap();
        for i in 0..n {
            for j in 0..p {
                let mut e = Mat::zeros(n, p);
                e[(i, j)] = 1.0;
                let w = g.project_tangent(&x, &e).unwrap();
                assert!(normal.dot(&w).abs() <= 1e-12, "{}", g.name());
            }
        }
    }
}

#[test]
fn projection_is_idempotent() {
    let mut r = rng(15);
    for g in geometries() {
        let x = random_point(g.as_ref(), &mut r);
        let t = random_tangent(g.as_ref(), &x, &mut r, 1.0);
        assert!(
            (g.project_tangent(&x, &t).unwrap() - &t).norm() <= 1e-13,
            "{}",
            g.name()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_is_symmetric_and_bilinear(seed in any::<u64>(), a in -5.0f64..5.0, b in -5.0f64..5.0) {
        let mut r = rng(seed);
        let g = Stiefel::new(8, 3, StiefelRetraction::Qr);
        let x = random_point(&g, &mut r);
        let u = random_tangent(&g, &x, &mut r, 1.0);
        let v = random_tangent(&g, &x, &mut r, 1.0);
        let w = random_tangent(&g, &x, &mut r, 1.0);
        let uv = g.inner(&x, &u, &v).unwrap();
        prop_assert!((uv - g.inner(&x, &v, &u).unwrap()).abs() <= 1e-12 * uv.abs().max(1.0));
        let lhs = g.inner(&x, &(&u * a + &v * b), &w).unwrap();
        let rhs = a * g.inner(&x, &u, &w).unwrap() + b * g.inner(&x, &v, &w).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (a.abs() + b.abs()).max(1.0) * u.norm().max(v.norm()) * w.norm());
        prop_assert!(g.inner(&x, &u, &u).unwrap() >= 0.0);
    }

    #[test]
    fn oblique_retraction_normalizes_columns(seed in any::<u64>(), scale in 1e-8f64..1e3) {
        let mut r = rng(seed);
        let g = Oblique::new(6, 4);
        let x = random_point(&g, &mut r);
        let xi = random_tangent(&g, &x, &mut r, scale);
        let y = g.retract(&x, &xi).unwrap();
        for c in y.column_iter() {
            prop_assert!((c.norm() - 1.0).abs() <= 1e-14);
        }
    }
}
