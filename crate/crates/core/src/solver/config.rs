use crate::error::{Error, Result};

/// How `sigma = <grad merit(X), F(X)>` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaMode {
    /// From the field's exact merit gradient.
    Exact,
    /// Forward difference of the merit along the retraction of `h F(X)`.
    FiniteDifference,
}

/// Which spectral step-size formula feeds the next line search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BbMode {
    /// `s(sigma) <S,S>/<S,Y>` at every iteration.
    Rbb1,
    /// `s(sigma) <S,Y>/<Y,Y>` at every iteration.
    Rbb2,
    /// `Rbb1` after even iterations, `Rbb2` after odd ones.
    Adaptive,
}

/// Response to `|sigma| < eps1 ‖F‖²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakdownMode {
    Stop,
    /// Take one step along the negative merit gradient, then resume. Needs a
    /// field with an exact merit gradient.
    GradientFallback,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Zhang-Hager averaging weight, in `[0, 1)`.
    pub eta: f64,
    /// Backtracking factor, in `(0, 1)`.
    pub delta: f64,
    /// Sufficient decrease constant, in `(0, 1)`.
    pub rho1: f64,
    /// Breakdown threshold, in `(0, 1)`.
    pub eps1: f64,
    pub tau_init: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    /// Residual tolerance on `‖F(X_k)‖_F`.
    pub eps: f64,
    pub eps_x: f64,
    pub eps_f: f64,
    /// Window length for the stagnation test.
    pub window: usize,
    pub max_iter: usize,
    pub sigma_mode: SigmaMode,
    /// Base finite-difference increment; the actual `h` is
    /// `fd_h / max(1, ‖F(X_k)‖)`.
    pub fd_h: f64,
    pub bb_mode: BbMode,
    pub breakdown_mode: BreakdownMode,
    pub max_backtracks: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            eta: 0.6,
            delta: 0.2,
            rho1: 1e-4,
            eps1: 1e-8,
            tau_init: 1e-3,
            tau_min: 1e-10,
            tau_max: 1e10,
            eps: 1e-5,
            eps_x: 1e-15,
            eps_f: 1e-15,
            window: 5,
            max_iter: 15000,
            sigma_mode: SigmaMode::FiniteDifference,
            fd_h: 1e-8,
            bb_mode: BbMode::Adaptive,
            breakdown_mode: BreakdownMode::Stop,
            max_backtracks: 60,
        }
    }
}

fn open_unit(v: f64) -> bool {
    v > 0.0 && v < 1.0
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta >= 0.0 && self.eta < 1.0) {
            return Err(Error::InvalidConfig("eta must lie in [0, 1)"));
        }
        if !open_unit(self.delta) {
            return Err(Error::InvalidConfig("delta must lie in (0, 1)"));
        }
        if !open_unit(self.rho1) {
            return Err(Error::InvalidConfig("rho1 must lie in (0, 1)"));
        }
        if !open_unit(self.eps1) {
            return Err(Error::InvalidConfig("eps1 must lie in (0, 1)"));
        }
        if !(self.tau_min > 0.0 && self.tau_min <= self.tau_max && self.tau_max.is_finite()) {
            return Err(Error::InvalidConfig("need 0 < tau_min <= tau_max < inf"));
        }
        if !(self.tau_init > 0.0 && self.tau_init.is_finite()) {
            return Err(Error::InvalidConfig("tau_init must be positive"));
        }
        if !(self.eps > 0.0) {
            return Err(Error::InvalidConfig("eps must be positive"));
        }
        if !(self.eps_x >= 0.0 && self.eps_f >= 0.0) {
            return Err(Error::InvalidConfig(
                "relative-change tolerances must be nonnegative",
            ));
        }
        if self.window == 0 {
            return Err(Error::InvalidConfig("stagnation window must be at least 1"));
        }
        if !(self.fd_h > 0.0) {
            return Err(Error::InvalidConfig("fd_h must be positive"));
        }
        Ok(())
    }
}
