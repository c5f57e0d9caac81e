use crate::error::Result;
use crate::field::{merit_value, VectorField};
use crate::manifold::{Manifold, Point, Tangent};

use super::SolverConfig;

#[derive(Debug, Clone)]
pub struct Accepted {
    pub tau: f64,
    pub x_next: Point,
    pub f_next: Tangent,
    pub merit_next: f64,
    pub backtracks: u32,
}

#[derive(Debug, Clone)]
pub enum LineSearch {
    Accepted(Accepted),
    Exhausted { backtracks: u32 },
}

impl LineSearch {
    /// Field evaluations spent, one per trial step.
    pub fn evaluations(&self) -> usize {
        match self {
            LineSearch::Accepted(a) => a.backtracks as usize + 1,
            LineSearch::Exhausted { backtracks } => *backtracks as usize,
        }
    }
}

/// Non-monotone backtracking: the first `tau = delta^h tau_start` with
/// `merit(R_X[tau Z]) <= c - slope * tau`.
///
/// For the residual direction `slope = rho1 eps1 ‖F(X)‖²`.
#[allow(clippy::too_many_arguments)]
pub fn line_search<M, F>(
    field: &F,
    geom: &M,
    x: &Point,
    z: &Tangent,
    c: f64,
    slope: f64,
    tau_start: f64,
    cfg: &SolverConfig,
) -> Result<LineSearch>
where
    M: Manifold + ?Sized,
    F: VectorField + ?Sized,
{
    let mut tau = tau_start;
    let mut backtracks = 0u32;
    loop {
        let x_next = geom.retract(x, &(z * tau))?;
        let f_next = field.eval(&x_next)?;
        let merit_next = merit_value(&f_next);
        if merit_next <= c - slope * tau {
            return Ok(LineSearch::Accepted(Accepted {
                tau,
                x_next,
                f_next,
                merit_next,
                backtracks,
            }));
        }
        if backtracks >= cfg.max_backtracks {
            return Ok(LineSearch::Exhausted {
                backtracks: backtracks + 1,
            });
        }
        tau *= cfg.delta;
        backtracks += 1;
    }
}

/// Decrease rate of the relaxed acceptance test.
pub fn relaxed_slope(cfg: &SolverConfig, f_norm_sq: f64) -> f64 {
    cfg.rho1 * cfg.eps1 * f_norm_sq
}
