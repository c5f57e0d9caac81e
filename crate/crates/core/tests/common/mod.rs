#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rsane::linalg::{qf, Mat};
use rsane::manifolds::{Oblique, Sphere, Stiefel, StiefelRetraction};
use rsane::Manifold;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn randn(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Mat {
    Mat::from_fn(n, p, |_, _| StandardNormal.sample(rng))
}

/// A random point: Gaussian matrix pushed onto the manifold by the natural map.
pub fn random_point(geom: &dyn Manifold, rng: &mut ChaCha8Rng) -> Mat {
    let (n, p) = geom.dims();
    let w = randn(rng, n, p);
    match geom.name() {
        "stiefel-qr" | "stiefel-polar" => qf(&w).unwrap(),
        _ => {
            let mut x = w;
            for mut c in x.column_iter_mut() {
                let nrm = c.norm();
                c /= nrm;
            }
            x
        }
    }
}

pub fn random_tangent(geom: &dyn Manifold, x: &Mat, rng: &mut ChaCha8Rng, scale: f64) -> Mat {
    let (n, p) = geom.dims();
    geom.project_tangent(x, &(randn(rng, n, p) * scale))
        .unwrap()
}

/// The geometries exercised by the axiom tests.
pub fn geometries() -> Vec<Box<dyn Manifold>> {
    vec![
        Box::new(Sphere::new(50)),
        Box::new(Stiefel::new(20, 5, StiefelRetraction::Qr)),
        Box::new(Stiefel::new(20, 5, StiefelRetraction::Polar)),
        Box::new(Oblique::new(20, 5)),
    ]
}
