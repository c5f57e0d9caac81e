//! Seeded problem instances and starting points.
//!
//! Every generator draws from its own ChaCha8 stream seeded with the given
//! value, so an instance depends on nothing but its arguments.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rsane::fields::JdField;
use rsane::linalg::{qf, Mat};

use crate::error::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of repetition `rep` in a batch started from `seed`.
pub fn rep_seed(seed: u64, rep: usize) -> u64 {
    seed.wrapping_add(rep as u64)
}

/// Standard normal matrix, filled column by column.
pub fn randn(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Mat {
    Mat::from_fn(n, p, |_, _| StandardNormal.sample(rng))
}

/// The flat unit vector `(1, ..., 1)ᵀ / √n`.
pub fn eig_start(n: usize) -> Mat {
    assert!(n >= 1, "dimension must be positive");
    Mat::from_element(n, 1, 1.0 / (n as f64).sqrt())
}

/// `qf(M)` for a standard normal `n x p` matrix `M`.
pub fn stiefel_start(n: usize, p: usize, seed: u64) -> Result<Mat> {
    assert!(p <= n, "Stiefel start needs p <= n");
    Ok(qf(&randn(&mut rng(seed), n, p))?)
}

/// Normalizes each column of `m`.
pub fn normalize_columns(mut m: Mat) -> Mat {
    for mut c in m.column_iter_mut() {
        let nrm = c.norm();
        c /= nrm;
    }
    m
}

/// Joint diagonalization instance `C_i = D + B_i + B_iᵀ` with
/// `D = diag(√(n+1), ..., √(2n))` and standard normal `B_i`, plus a starting
/// point with normalized standard normal columns. The `B_i` are drawn first,
/// then the starting matrix.
pub fn jd_instance(n: usize, p: usize, nmat: usize, seed: u64) -> Result<(JdField, Mat)> {
    let mut r = rng(seed);
    let cs: Vec<Mat> = (0..nmat)
        .map(|_| {
            let b = randn(&mut r, n, n);
            let mut c = &b + b.transpose();
            for i in 0..n {
                c[(i, i)] += ((n + i + 1) as f64).sqrt();
            }
            c
        })
        .collect();
    let x0 = normalize_columns(randn(&mut r, n, p));
    Ok((JdField::new(cs, p)?, x0))
}

/// Symmetric positive definite `Q diag(1, 2, ..., n) Qᵀ` with `Q` the
/// orthogonal factor of a standard normal matrix.
pub fn random_spd(n: usize, seed: u64) -> Result<Mat> {
    let q = qf(&randn(&mut rng(seed), n, n))?;
    let scaled = Mat::from_fn(n, n, |i, j| q[(i, j)] * (j + 1) as f64);
    let a = scaled * q.transpose();
    Ok((&a + a.transpose()) * 0.5)
}
