//! Direction, spectral step and Zhang-Hager bookkeeping.
//!
//! Inner products here are the trace metric shared by every geometry in the
//! crate.

use crate::manifold::Tangent;

use super::config::BbMode;

/// `s(x) = x / |x|` for nonzero `x`.
pub fn sign_s(x: f64) -> f64 {
    debug_assert!(x != 0.0, "sign is undefined at zero");
    if x > 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// `Z = -s(sigma) F(X)`.
pub fn direction(sigma: f64, fx: &Tangent) -> Tangent {
    fx * (-sign_s(sigma))
}

/// Returns `(C_{k+1}, Q_{k+1})` with `Q_{k+1} = eta Q_k + 1` and
/// `C_{k+1} = (eta Q_k C_k + merit_next) / Q_{k+1}`.
pub fn zh_update(c: f64, q: f64, merit_next: f64, eta: f64) -> (f64, f64) {
    let q_next = eta * q + 1.0;
    let c_next = (eta * q * c + merit_next) / q_next;
    (c_next, q_next)
}

/// Transported displacement and residual difference at `X_{k+1}`.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    /// `Ŝ = -tau s(sigma) T[F_k]`.
    pub s: Tangent,
    /// `Ŷ = F_{k+1} - T[F_k]`.
    pub y: Tangent,
    /// Scaled disagreement between `Ŷ` and `F_{k+1} + Ŝ / (tau s(sigma))`.
    pub y_gap: f64,
}

/// Builds `Ŝ` and `Ŷ` from the (scaled) transport of `F_k` to `X_{k+1}`.
pub fn build_sy(tau: f64, sigma: f64, f_next: &Tangent, transported_f: &Tangent) -> SpectralPair {
    let sgn = sign_s(sigma);
    let s = transported_f * (-tau * sgn);
    let y = f_next - transported_f;
    let y_alt = f_next + &s * (1.0 / (tau * sgn));
    let scale = 1f64.max(f_next.norm() + transported_f.norm());
    let y_gap = (&y - y_alt).norm() / scale;
    SpectralPair { s, y, y_gap }
}

/// Raw `s(sigma) <S,S>/<S,Y>`; `None` when the quotient is undefined.
pub fn rbb1_raw(s: &Tangent, y: &Tangent, sigma: f64) -> Option<f64> {
    finite_quotient(sign_s(sigma) * s.dot(s), s.dot(y))
}

/// Raw `s(sigma) <S,Y>/<Y,Y>`; `None` when the quotient is undefined.
pub fn rbb2_raw(s: &Tangent, y: &Tangent, sigma: f64) -> Option<f64> {
    finite_quotient(sign_s(sigma) * s.dot(y), y.dot(y))
}

fn finite_quotient(num: f64, den: f64) -> Option<f64> {
    if den == 0.0 {
        return None;
    }
    let v = num / den;
    v.is_finite().then_some(v)
}

/// Next trial step, clamped into `[tau_min, tau_max]`. Undefined quotients
/// map to `tau_min`. `k` is the index of the iteration that produced `Ŝ, Ŷ`.
pub fn rbb_step(
    s: &Tangent,
    y: &Tangent,
    sigma: f64,
    k: usize,
    tau_min: f64,
    tau_max: f64,
    mode: BbMode,
) -> f64 {
    let use_first = match mode {
        BbMode::Rbb1 => true,
        BbMode::Rbb2 => false,
        BbMode::Adaptive => k.is_multiple_of(2),
    };
    let raw = if use_first {
        rbb1_raw(s, y, sigma)
    } else {
        rbb2_raw(s, y, sigma)
    };
    match raw {
        Some(v) => v.min(tau_max).max(tau_min),
        None => tau_min,
    }
}
