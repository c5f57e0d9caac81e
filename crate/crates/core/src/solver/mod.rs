//! The spectral residual iteration.
//!
//! Each iteration evaluates `sigma_k = <grad merit(X_k), F(X_k)>` (exactly or by
//! a finite difference), moves along `Z_k = -s(sigma_k) F(X_k)` with a
//! non-monotone backtracking search started from the previous spectral step,
//! and computes the next spectral step from `F(X_k)` transported to `X_{k+1}`
//! with the scaled (non-expansive) transport.

pub mod audit;
mod config;
mod line_search;
pub mod spectral;
mod stop;

use alloc::vec::Vec;

use crate::error::{check_shape, Error, Result};
use crate::field::{merit_value, VectorField};
use crate::manifold::{scaled_transport_to, Manifold, Point, Tangent};
use crate::manifolds::Euclidean;

pub use config::{BbMode, BreakdownMode, SigmaMode, SolverConfig};
pub use line_search::{line_search, relaxed_slope, Accepted, LineSearch};
pub use spectral::{build_sy, direction, rbb_step, sign_s, zh_update, SpectralPair};
pub use stop::{check_stop, Status};

/// Largest feasibility gap accepted for a starting point.
pub const START_FEASIBILITY_TOL: f64 = 1e-10;

/// One row of the iteration history.
///
/// State fields describe `X_k`. Step fields (`sigma` through `fallback`)
/// describe the step from `X_k` to `X_{k+1}` and stay `None` on the final row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub residual_norm: f64,
    pub merit: f64,
    /// Zhang-Hager average `C_k`.
    pub c: f64,
    /// Zhang-Hager weight `Q_k`.
    pub q: f64,
    /// Cumulative field evaluations up to and including `F(X_k)`.
    pub nfe: usize,
    pub feasibility_gap: f64,
    pub sigma: Option<f64>,
    /// Trial step the line search started from.
    pub tau_start: Option<f64>,
    /// Accepted step `tau_k`.
    pub tau: Option<f64>,
    pub backtracks: Option<u32>,
    pub rel_x: Option<f64>,
    pub rel_f: Option<f64>,
    /// Disagreement of the two algebraic forms of `Ŷ_k`.
    pub y_gap: Option<f64>,
    /// The step followed the merit gradient after a breakdown.
    pub fallback: bool,
}

#[derive(Debug, Clone)]
pub struct SolverReport {
    pub status: Status,
    pub x: Point,
    pub residual_norm: f64,
    pub iterations: usize,
    pub nfe: usize,
    /// Wall-clock seconds; left at zero by [`solve`], filled in by timing wrappers.
    pub elapsed_secs: f64,
    pub trace: Vec<IterationRecord>,
}

/// `sigma = <grad merit(X), F(X)>`.
///
/// In finite-difference mode this is `(merit(R_X[h F]) - merit(X)) / h` and
/// costs one field evaluation, reported in the second tuple entry.
pub fn sigma<M, F>(
    field: &F,
    geom: &M,
    x: &Point,
    fx: &Tangent,
    mode: SigmaMode,
    h: f64,
) -> Result<(f64, usize)>
where
    M: Manifold + ?Sized,
    F: VectorField + ?Sized,
{
    match mode {
        SigmaMode::Exact => {
            let s = field.exact_sigma(x, fx).ok_or(Error::MissingCapability)??;
            Ok((s, 0))
        }
        SigmaMode::FiniteDifference => {
            let x_h = geom.retract(x, &(fx * h))?;
            if x_h == *x {
                return Ok((0.0, 0));
            }
            let f_h = field.eval(&x_h)?;
            Ok(((merit_value(&f_h) - merit_value(fx)) / h, 1))
        }
    }
}

/// Finite-difference increment used at a point with residual norm `f_norm`.
pub fn fd_increment(cfg: &SolverConfig, f_norm: f64) -> f64 {
    cfg.fd_h / f_norm.max(1.0)
}

/// Runs the method from `x0` until a stopping rule fires.
///
/// Errors are reserved for invalid input (configuration, shapes, infeasible
/// start, missing capability) and for failures inside the geometry or field;
/// every algorithmic outcome, including breakdown and line-search failure, is
/// a [`Status`] on the returned report.
pub fn solve<M, F>(field: &F, geom: &M, x0: &Point, cfg: &SolverConfig) -> Result<SolverReport>
where
    M: Manifold + ?Sized,
    F: VectorField + ?Sized,
{
    cfg.validate()?;
    check_shape(geom.dims(), x0.shape())?;
    let gap0 = geom.feasibility_gap(x0);
    if !(gap0 <= START_FEASIBILITY_TOL) {
        return Err(Error::Infeasible(gap0));
    }
    if cfg.breakdown_mode == BreakdownMode::GradientFallback {
        // probe the capability up front rather than at the first breakdown
        let f0 = field.eval(x0)?;
        if field.merit_gradient(x0, &f0).is_none() {
            return Err(Error::MissingCapability);
        }
    }

    let mut x = x0.clone();
    let mut f = field.eval(&x)?;
    let mut nfe = 1usize;
    let mut merit = merit_value(&f);
    let mut c = merit;
    let mut q = 1.0;
    let mut tau = cfg.tau_init;
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut k = 0usize;

    let finish = |status, x: Point, trace: Vec<IterationRecord>, nfe| {
        let last: &IterationRecord = trace.last().expect("trace holds the current iterate");
        SolverReport {
            status,
            residual_norm: last.residual_norm,
            iterations: last.k,
            nfe,
            elapsed_secs: 0.0,
            x,
            trace,
        }
    };

    loop {
        let f_norm = f.norm();
        trace.push(IterationRecord {
            k,
            residual_norm: f_norm,
            merit,
            c,
            q,
            nfe,
            feasibility_gap: geom.feasibility_gap(&x),
            ..IterationRecord::default()
        });
        if let Some(status) = check_stop(&trace, cfg) {
            return Ok(finish(status, x, trace, nfe));
        }

        let (sig, extra) = sigma(
            field,
            geom,
            &x,
            &f,
            cfg.sigma_mode,
            fd_increment(cfg, f_norm),
        )?;
        nfe += extra;
        trace.last_mut().unwrap().sigma = Some(sig);

        let f_sq = f_norm * f_norm;
        let breakdown = !(sig.abs() >= cfg.eps1 * f_sq);
        let (z, slope) = if !breakdown {
            (direction(sig, &f), relaxed_slope(cfg, f_sq))
        } else {
            match cfg.breakdown_mode {
                BreakdownMode::Stop => return Ok(finish(Status::Breakdown, x, trace, nfe)),
                BreakdownMode::GradientFallback => {
                    let g = field
                        .merit_gradient(&x, &f)
                        .ok_or(Error::MissingCapability)??;
                    let g_sq = g.norm_squared();
                    if g_sq == 0.0 {
                        return Ok(finish(Status::Breakdown, x, trace, nfe));
                    }
                    trace.last_mut().unwrap().fallback = true;
                    (-g, cfg.rho1 * g_sq)
                }
            }
        };

        let row = trace.last_mut().unwrap();
        row.tau_start = Some(tau);
        let search = line_search(field, geom, &x, &z, c, slope, tau, cfg)?;
        nfe += search.evaluations();
        let step = match search {
            LineSearch::Accepted(a) => a,
            LineSearch::Exhausted { backtracks } => {
                row.backtracks = Some(backtracks);
                return Ok(finish(Status::LineSearchFailure, x, trace, nfe));
            }
        };
        row.tau = Some(step.tau);
        row.backtracks = Some(step.backtracks);

        let (c_next, q_next) = zh_update(c, q, step.merit_next, cfg.eta);

        if breakdown {
            tau = cfg.tau_init.min(cfg.tau_max).max(cfg.tau_min);
        } else {
            let moved = scaled_transport_to(geom, &step.x_next, &f, f_norm)?;
            let pair = build_sy(step.tau, sig, &step.f_next, &moved);
            tau = rbb_step(
                &pair.s,
                &pair.y,
                sig,
                k,
                cfg.tau_min,
                cfg.tau_max,
                cfg.bb_mode,
            );
            row.y_gap = Some(pair.y_gap);
        }

        let x_norm = x.norm();
        let dx = (&step.x_next - &x).norm();
        row.rel_x = Some(if x_norm > 0.0 { dx / x_norm } else { dx });
        row.rel_f = Some((step.merit_next - merit).abs() / (merit + 1.0));

        x = step.x_next;
        f = step.f_next;
        merit = step.merit_next;
        c = c_next;
        q = q_next;
        k += 1;
    }
}

/// Euclidean spectral residual method for a map `R^{n x p} -> R^{n x p}`: the
/// same iteration with the identity retraction and transport.
pub fn sane_solve<F>(field: &F, x0: &Point, cfg: &SolverConfig) -> Result<SolverReport>
where
    F: VectorField + ?Sized,
{
    let (n, p) = x0.shape();
    solve(field, &Euclidean::new(n, p), x0, cfg)
}
