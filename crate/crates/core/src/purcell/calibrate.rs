//! Numerical extraction of the resonator linewidth and qubit–resonator
//! coupling from a circuit, for comparison against the dispersive formula.

use crate::circuits::{bisect, SingleModeParams};
use crate::error::AnalysisError;
use crate::network::{input_admittance, NetworkTree};
use crate::scalar::{cx, Cx, Real};

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximum of `f` on `[a, b]`.
pub(crate) fn golden_max<T: Real>(f: impl Fn(T) -> T, mut a: T, mut b: T, rel_tol: T) -> T {
    let r = T::lit(GOLDEN);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..300 {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    (a + b) / T::lit(2.0)
}

/// Peak `ω₀` of Re[Y] in `[omega_lo, omega_hi]` and its full width at half
/// maximum, both rad/s. For an isolated mode this width is the energy decay
/// rate κ.
pub fn lorentzian_linewidth<T: Real>(net: &NetworkTree<T>, omega_lo: T, omega_hi: T) -> Result<(T, T), AnalysisError> {
    if !(omega_lo > T::zero() && omega_hi > omega_lo) {
        return Err(AnalysisError::InvalidParameter("need 0 < omega_lo < omega_hi".into()));
    }
    let g = |w: T| input_admittance(net, w).map(|y| y.value.re).unwrap_or(T::nan());
    // coarse scan, then refine
    let n = 20_001usize;
    let step = (omega_hi - omega_lo) / T::from_count(n - 1);
    let (mut best, mut best_g) = (0usize, T::neg_infinity());
    for i in 0..n {
        let v = g(omega_lo + step * T::from_count(i));
        if v > best_g {
            best = i;
            best_g = v;
        }
    }
    if best == 0 || best == n - 1 {
        return Err(AnalysisError::Search("Re[Y] peak not inside the search window".into()));
    }
    let w_at = |i: usize| omega_lo + step * T::from_count(i);
    let w0 = golden_max(g, w_at(best - 1), w_at(best + 1), T::lit(1e-15));
    let half = g(w0) / T::lit(2.0);
    let above = |w: T| g(w) - half;
    let mut l = best;
    while l > 0 && g(w_at(l)) > half {
        l -= 1;
    }
    let mut r = best;
    while r < n - 1 && g(w_at(r)) > half {
        r += 1;
    }
    if l == 0 || r == n - 1 {
        return Err(AnalysisError::Search("half-maximum points not inside the search window".into()));
    }
    let left = bisect(above, w_at(l), w0, T::lit(1e-15));
    let right = bisect(above, w0, w_at(r), T::lit(1e-15));
    match (left, right) {
        (Some(a), Some(b)) => Ok((w0, b - a)),
        _ => Err(AnalysisError::Search("half-maximum crossing not bracketed".into())),
    }
}

/// Susceptance of the undriven qubit (`Cq` ∥ `Lq`) loaded by the lossless
/// resonator through `Cg`.
fn total_susceptance<T: Real>(p: &SingleModeParams<T>, lq: T, w: T) -> T {
    let j = cx(T::zero(), T::one());
    let tank: Cx<T> = j * w * p.cr + (j * w * p.lr).inv();
    let y_net = ((j * w * p.cg).inv() + tank.inv()).inv();
    w * p.cq - (w * lq).recip() + y_net.im
}

/// Normal-mode frequencies (rad/s) of the lossless coupled system for a
/// qubit inductance `lq`.
pub fn normal_modes<T: Real>(p: &SingleModeParams<T>, lq: T) -> Result<(T, T), AnalysisError> {
    // pole of the coupled branch: tank loaded by Cg to ground
    let wp = (p.lr * (p.cr + p.cg)).sqrt().recip();
    let eps = T::lit(1e-12);
    let b = |w: T| total_susceptance(p, lq, w);
    let lower = bisect(b, wp * T::lit(1e-4), wp * (T::one() - eps), T::lit(1e-15));
    let upper = bisect(b, wp * (T::one() + eps), wp * T::lit(1e4), T::lit(1e-15));
    match (lower, upper) {
        (Some(a), Some(c)) => Ok((a, c)),
        _ => Err(AnalysisError::Search("normal modes not bracketed".into())),
    }
}

/// Coupling `g` (rad/s) as half the minimum normal-mode splitting when the
/// qubit inductance is tuned through the resonator.
pub fn coupling_from_avoided_crossing<T: Real>(p: &SingleModeParams<T>) -> Result<T, AnalysisError> {
    p.validate()?;
    let wp = (p.lr * (p.cr + p.cg)).sqrt().recip();
    let lq_of = |log_w: T| {
        let w = log_w.exp();
        (w * w * p.cq).recip()
    };
    let neg_split = |log_w: T| normal_modes(p, lq_of(log_w)).map(|(a, b)| a - b).unwrap_or(T::neg_infinity());
    let center = wp.ln();
    let span = T::lit(0.3);
    let best = golden_max(neg_split, center - span, center + span, T::lit(1e-14));
    let (a, b) = normal_modes(p, lq_of(best))?;
    Ok((b - a) / T::lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::build_single_mode;
    use std::f64::consts::PI;

    #[test]
    fn linewidth_matches_ringdown() {
        let p = SingleModeParams::<f64>::reference_default();
        let net = build_single_mode(&p).unwrap();
        let (w0, kappa) = lorentzian_linewidth(&net, 2.0 * PI * 6.5e9, 2.0 * PI * 7.5e9).unwrap();
        let (w_rd, k_rd) = p.ringdown_kappa().unwrap();
        assert!((kappa / k_rd - 1.0).abs() < 0.02, "{kappa} vs {k_rd}");
        assert!((w0 / w_rd - 1.0).abs() < 1e-6);
    }

    #[test]
    fn coupling_is_near_design_value() {
        let p = SingleModeParams::<f64>::reference_default();
        let g = coupling_from_avoided_crossing(&p).unwrap();
        assert!((g / (2.0 * PI * 100e6) - 1.0).abs() < 0.1, "g/2π = {}", g / 2.0 / PI);
    }

    #[test]
    fn golden_finds_parabola_top() {
        let x = golden_max(|x: f64| -(x - 0.3).powi(2), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
    }
}
