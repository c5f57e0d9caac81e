//! Checks of the iteration invariants on a recorded trace.

use alloc::vec::Vec;

use super::IterationRecord;

/// Summary of the invariants the iteration maintains, computed from a trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceAudit {
    /// `max_k (merit_k - C_k) / (1 + |C_k|)`; nonpositive up to rounding.
    pub max_merit_over_c: f64,
    /// Every accepted step strictly lowered `C`.
    pub c_strictly_decreasing: bool,
    /// Every accepted step strictly lowered the merit.
    pub merit_strictly_decreasing: bool,
    /// `1 <= Q_k < 1 / (1 - eta)` everywhere.
    pub q_bounded: bool,
    pub max_y_gap: f64,
    /// `min_k tau_k ‖F(X_k)‖²` over the accepted steps.
    pub min_tau_residual_sq: f64,
    pub max_feasibility_gap: f64,
    /// Every line search after the first started inside `[tau_min, tau_max]`.
    pub tau_start_in_bounds: bool,
}

impl TraceAudit {
    pub fn new(trace: &[IterationRecord], eta: f64, tau_min: f64, tau_max: f64) -> Self {
        let q_cap = 1.0 / (1.0 - eta);
        let mut audit = TraceAudit {
            max_merit_over_c: f64::NEG_INFINITY,
            c_strictly_decreasing: true,
            merit_strictly_decreasing: true,
            q_bounded: true,
            max_y_gap: 0.0,
            min_tau_residual_sq: f64::INFINITY,
            max_feasibility_gap: 0.0,
            tau_start_in_bounds: true,
        };
        for (i, r) in trace.iter().enumerate() {
            audit.max_merit_over_c = audit
                .max_merit_over_c
                .max((r.merit - r.c) / (1.0 + r.c.abs()));
            if !(r.q >= 1.0 && r.q < q_cap) {
                audit.q_bounded = false;
            }
            audit.max_feasibility_gap = audit.max_feasibility_gap.max(r.feasibility_gap);
            if let Some(g) = r.y_gap {
                audit.max_y_gap = audit.max_y_gap.max(g);
            }
            if let Some(t) = r.tau {
                audit.min_tau_residual_sq = audit
                    .min_tau_residual_sq
                    .min(t * r.residual_norm * r.residual_norm);
            }
            if i > 0 {
                if let Some(t0) = r.tau_start {
                    if !(t0 >= tau_min && t0 <= tau_max) {
                        audit.tau_start_in_bounds = false;
                    }
                }
            }
            if let Some(next) = trace.get(i + 1) {
                if !(next.c < r.c) {
                    audit.c_strictly_decreasing = false;
                }
                if !(next.merit < r.merit) {
                    audit.merit_strictly_decreasing = false;
                }
            }
        }
        audit
    }

    /// Names of the violated invariants. The `tau_k ‖F_k‖²` trend is only
    /// checked when `check_trend` is set: it is an asymptotic property that
    /// short runs or loose tolerances never reach.
    pub fn violations(&self, check_trend: bool) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.max_merit_over_c > 1e-12 {
            out.push("merit exceeds the non-monotone average");
        }
        if !self.c_strictly_decreasing {
            out.push("average C did not strictly decrease");
        }
        if !self.q_bounded {
            out.push("weight Q left [1, 1/(1-eta))");
        }
        if self.max_y_gap > 1e-12 {
            out.push("two forms of Y disagree");
        }
        if self.max_feasibility_gap > 1e-12 {
            out.push("iterate left the manifold");
        }
        if !self.tau_start_in_bounds {
            out.push("trial step outside [tau_min, tau_max]");
        }
        if check_trend && self.min_tau_residual_sq.is_finite() && self.min_tau_residual_sq > 1e-8 {
            out.push("min tau_k |F_k|^2 did not reach 1e-8");
        }
        out
    }
}
