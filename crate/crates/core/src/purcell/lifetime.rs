use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::network::ComplexImmittance;
use crate::scalar::Real;

/// Re[Y] at or below this is numerically zero (double-precision cancellation floor), S.
pub const REAL_FLOOR_S: f64 = 1e-20;
/// Re[Y] below this is a passivity violation rather than rounding noise, S.
pub const PASSIVITY_FLOOR_S: f64 = -1e-15;
/// Analytic lifetimes above this are reported as open, s.
pub const LIFETIME_GUARD_S: f64 = 1e10;

/// Qubit lifetime, or the open-circuit marker when nothing dissipates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lifetime<T> {
    Finite(T),
    Open,
}

impl<T: Real> Lifetime<T> {
    /// Seconds, with `Open` mapped to `+∞`.
    pub fn seconds(self) -> T {
        match self {
            Lifetime::Finite(t) => t,
            Lifetime::Open => T::infinity(),
        }
    }

    pub fn is_open(self) -> bool {
        matches!(self, Lifetime::Open)
    }
}

/// `T1 = Cq / Re[Y]`.
pub fn lifetime_from_admittance<T: Real>(y: ComplexImmittance<T>, cq: T) -> Result<Lifetime<T>, AnalysisError> {
    let g = y.y().re;
    if g.is_nan() {
        return Err(AnalysisError::InvalidParameter("admittance is NaN".into()));
    }
    if g < T::lit(PASSIVITY_FLOOR_S) {
        return Err(AnalysisError::PassivityViolation { re_y: g.as_f64() });
    }
    if g <= T::lit(REAL_FLOOR_S) {
        return Ok(Lifetime::Open);
    }
    Ok(Lifetime::Finite(cq / g))
}

/// Inputs of the dispersive single-mode Purcell rate, all rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPurcellParams<T> {
    pub g: T,
    /// `ω_q − ω_r`.
    pub delta: T,
    pub kappa_r: T,
}

impl<T: Real> AnalyticPurcellParams<T> {
    /// False once `g/|Δ|` exceeds 0.3.
    pub fn dispersive_valid(&self) -> bool {
        (self.g / self.delta).abs() <= T::lit(0.3)
    }
}

/// `T1 = 1 / (κ (g/Δ)²)`.
pub fn analytic_purcell<T: Real>(p: &AnalyticPurcellParams<T>) -> Result<Lifetime<T>, AnalysisError> {
    if p.delta == T::zero() {
        return Err(AnalysisError::Resonance);
    }
    let ratio = p.g / p.delta;
    let t1 = (p.kappa_r * ratio * ratio).recip();
    if !(t1 <= T::lit(LIFETIME_GUARD_S)) {
        return Ok(Lifetime::Open);
    }
    Ok(Lifetime::Finite(t1))
}
