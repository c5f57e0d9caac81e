use super::{IterationRecord, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// `‖F(X_k)‖ < eps`.
    ConvergedResidual,
    /// Both relative changes fell below `eps_x` and `eps_f`.
    ConvergedRelChange,
    /// Windowed means of the relative changes fell below `10 eps_x`, `10 eps_f`.
    ConvergedStagnation,
    MaxIterations,
    /// `|sigma_k| < eps1 ‖F(X_k)‖²`.
    Breakdown,
    /// Backtracking hit `max_backtracks` without meeting the acceptance test.
    LineSearchFailure,
}

impl Status {
    pub fn is_converged(self) -> bool {
        matches!(
            self,
            Status::ConvergedResidual | Status::ConvergedRelChange | Status::ConvergedStagnation
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::ConvergedResidual => "converged_residual",
            Status::ConvergedRelChange => "converged_relchange",
            Status::ConvergedStagnation => "converged_stagnation",
            Status::MaxIterations => "max_iterations",
            Status::Breakdown => "breakdown",
            Status::LineSearchFailure => "line_search_failure",
        }
    }
}

impl core::fmt::Display for Status {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Stopping rules, evaluated with the current iterate as the last record.
///
/// The relative changes that lead into the current iterate live on the
/// previous records (`rel_x`/`rel_f` of record `k` describe the step from
/// `X_k` to `X_{k+1}`).
pub fn check_stop(trace: &[IterationRecord], cfg: &SolverConfig) -> Option<Status> {
    let last = trace.last()?;
    if last.residual_norm < cfg.eps {
        return Some(Status::ConvergedResidual);
    }
    let k = last.k;
    let done = &trace[..trace.len() - 1];
    if let Some(prev) = done.last() {
        if let (Some(rx), Some(rf)) = (prev.rel_x, prev.rel_f) {
            if rx < cfg.eps_x && rf < cfg.eps_f {
                return Some(Status::ConvergedRelChange);
            }
        }
        let w = k.min(cfg.window).min(done.len());
        if w > 0 {
            let tail = &done[done.len() - w..];
            let mut sx = 0.0;
            let mut sf = 0.0;
            let mut complete = true;
            for r in tail {
                match (r.rel_x, r.rel_f) {
                    (Some(x), Some(f)) => {
                        sx += x;
                        sf += f;
                    }
                    _ => complete = false,
                }
            }
            if complete && sx / w as f64 <= 10.0 * cfg.eps_x && sf / w as f64 <= 10.0 * cfg.eps_f {
                return Some(Status::ConvergedStagnation);
            }
        }
    }
    if k >= cfg.max_iter {
        return Some(Status::MaxIterations);
    }
    None
}
