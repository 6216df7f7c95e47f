//! Builders for the canonical readout circuits, as seen from the qubit's
//! junction terminals.
//!
//! The qubit's own shunt capacitance `cq` is never part of a tree; it only
//! enters through `T1 = cq / Re[Y]`.
//!
//! * single mode: `series(Cg, shunt(tank, series(Cκ, R)))`
//! * multi mode: `series(Cg, shunt(tank₁ + tank₂ + … , series(Cκ, R)))`, the
//!   tanks stacked in series to ground (series Foster form of the line seen
//!   from the qubit end), sharing one load branch
//! * transmission line: `series(Cg, line(x, shunt(series(Cκ, R), line(ℓ − x, open))))`

use crate::error::{AnalysisError, NetworkError};
use crate::network::{Element, NetworkTree, TLine};
use crate::scalar::{cx, omega_from_hz, Cx, Real, SPEED_OF_LIGHT};

/// Reference design values used by [`SingleModeParams::reference_default`] and friends.
pub mod defaults {
    /// Bare fundamental of the readout resonator, Hz.
    pub const RESONATOR_HZ: f64 = 7e9;
    /// Target resonator linewidth κ/2π, Hz.
    pub const KAPPA_HZ: f64 = 5e6;
    /// Target qubit–resonator coupling g/2π, Hz.
    pub const COUPLING_HZ: f64 = 100e6;
    pub const Z0_OHM: f64 = 50.0;
    pub const R_LOAD_OHM: f64 = 50.0;
    pub const CQ_F: f64 = 70e-15;
    pub const N_MODES: usize = 3;
}

fn param_positive<T: Real>(what: &str, v: T) -> Result<(), AnalysisError> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(AnalysisError::InvalidParameter(format!("{what} must be positive and finite, got {v}")))
    }
}

/// Lumped qubit–resonator–load circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleModeParams<T> {
    /// Qubit shunt capacitance, F.
    pub cq: T,
    /// Qubit–resonator coupling capacitance, F.
    pub cg: T,
    /// Resonator inductance, H.
    pub lr: T,
    /// Resonator capacitance, F.
    pub cr: T,
    /// Resonator–load coupling capacitance, F.
    pub c_kappa: T,
    /// Load resistance, Ω.
    pub r_load: T,
}

impl<T: Real> SingleModeParams<T> {
    /// Reference circuit: the fundamental of a 50 Ω λ/2 line at 7 GHz
    /// (`Cr = C_line / 2`), a 70 fF qubit, `Cg` set for g/2π ≈ 100 MHz and
    /// `Cκ` solved so that the ring-down linewidth is κ/2π = 5 MHz.
    pub fn reference_default() -> Self {
        let line = default_line::<T>();
        let cr = line.total_capacitance() / T::lit(2.0);
        let wr = omega_from_hz(line.half_wave_frequency());
        let lr = (wr * wr * cr).recip();
        let cq = T::lit(defaults::CQ_F);
        let cg = cg_for_coupling(cq, cr, wr, omega_from_hz(T::lit(defaults::COUPLING_HZ)));
        let mut p = Self { cq, cg, lr, cr, c_kappa: T::lit(1e-15), r_load: T::lit(defaults::R_LOAD_OHM) };
        p.c_kappa = p
            .solve_c_kappa(omega_from_hz(T::lit(defaults::KAPPA_HZ)))
            .expect("reference circuit admits a 5 MHz linewidth");
        p
    }

    /// Bare resonator frequency `1/(2π√(Lr·Cr))`, Hz.
    pub fn resonator_frequency(&self) -> T {
        (T::two_pi() * (self.lr * self.cr).sqrt()).recip()
    }

    pub fn validate(&self) -> Result<(), AnalysisError> {
        param_positive("cq", self.cq)?;
        param_positive("cg", self.cg)?;
        param_positive("lr", self.lr)?;
        param_positive("cr", self.cr)?;
        param_positive("c_kappa", self.c_kappa)?;
        param_positive("r_load", self.r_load)
    }

    /// Non-fatal range checks.
    pub fn validity_warnings(&self) -> Vec<String> {
        let f = self.resonator_frequency();
        if f < T::lit(1e9) || f > T::lit(30e9) {
            vec![format!("resonator frequency {:.3} GHz outside [1, 30] GHz", f.as_f64() / 1e9)]
        } else {
            Vec::new()
        }
    }

    /// Same circuit with `cg` chosen for a target coupling `g` (rad/s) using
    /// the weak-coupling expression `g = ω_r·Cg / (2√(Cq·Cr))`.
    pub fn with_coupling(self, g: T) -> Self {
        let wr = omega_from_hz(self.resonator_frequency());
        Self { cg: cg_for_coupling(self.cq, self.cr, wr, g), ..self }
    }

    /// Admittance of the resonator node with the qubit terminals shorted
    /// (the coupling capacitor returns to ground).
    pub fn resonator_node_admittance(&self, omega: T) -> Cx<T> {
        let j = cx(T::zero(), T::one());
        let tank = j * omega * self.cr + (j * omega * self.lr).inv();
        let load = ((j * omega * self.c_kappa).inv() + cx(self.r_load, T::zero())).inv();
        tank + load + j * omega * self.cg
    }

    /// Loaded resonance `ω₀` and ring-down linewidth `κ = 2G / (dB/dω)` of the
    /// resonator node, both rad/s.
    pub fn ringdown_kappa(&self) -> Result<(T, T), AnalysisError> {
        self.validate()?;
        let wr = omega_from_hz(self.resonator_frequency());
        let b = |w: T| self.resonator_node_admittance(w).im;
        let w0 = bisect(b, wr * T::lit(0.5), wr * T::lit(1.5), T::lit(1e-15))
            .ok_or_else(|| AnalysisError::Search("resonator node has no susceptance zero near ω_r".into()))?;
        let h = w0 * T::lit(1e-6);
        let slope = (b(w0 + h) - b(w0 - h)) / (T::lit(2.0) * h);
        let g = self.resonator_node_admittance(w0).re;
        Ok((w0, T::lit(2.0) * g / slope))
    }

    /// `c_kappa` giving a ring-down linewidth of `kappa` rad/s.
    pub fn solve_c_kappa(&self, kappa: T) -> Result<T, AnalysisError> {
        param_positive("kappa", kappa)?;
        let wr = omega_from_hz(self.resonator_frequency());
        // κ rises monotonically with Cκ up to ω·Cκ·R = 1
        let hi = (wr * self.r_load).recip();
        let f = |log_c: T| {
            let p = Self { c_kappa: log_c.exp(), ..*self };
            p.ringdown_kappa().map(|(_, k)| k - kappa).unwrap_or(T::nan())
        };
        let root = bisect(f, T::lit(1e-21).ln(), hi.ln(), T::lit(1e-13))
            .ok_or_else(|| AnalysisError::Search(format!("no coupling capacitance reaches κ = {kappa}")))?;
        Ok(root.exp())
    }
}

/// Weak-coupling capacitance for coupling `g`: `Cg = 2g√(Cq·Cr)/ω_r`.
pub fn cg_for_coupling<T: Real>(cq: T, cr: T, omega_r: T, g: T) -> T {
    T::lit(2.0) * g * (cq * cr).sqrt() / omega_r
}

/// Reference 50 Ω λ/2 line at 7 GHz with vacuum phase velocity.
pub fn default_line<T: Real>() -> TLine<T> {
    let vp = T::lit(SPEED_OF_LIGHT);
    TLine::lossless(T::lit(defaults::Z0_OHM), vp / (T::lit(2.0) * T::lit(defaults::RESONATOR_HZ)), vp)
}

/// Single resonator mode for the multi-mode model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec<T> {
    /// Mode frequency, Hz.
    pub frequency: T,
    /// Mode capacitance, F.
    pub capacitance: T,
    /// Optional shunt loss resistance, Ω.
    pub loss: Option<T>,
}

impl<T: Real> ModeSpec<T> {
    pub fn inductance(&self) -> T {
        let w = omega_from_hz(self.frequency);
        (w * w * self.capacitance).recip()
    }

    fn element(&self) -> Element<T> {
        Element::ParallelRlc { r: self.loss, l: self.inductance(), c: self.capacitance }
    }
}

/// Truncated multi-mode resonator sharing one load branch.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiModeParams<T> {
    pub cq: T,
    pub cg: T,
    pub c_kappa: T,
    pub r_load: T,
    pub modes: Vec<ModeSpec<T>>,
}

impl<T: Real> MultiModeParams<T> {
    /// Harmonic series `n·f₁` built on a single-mode circuit; every mode gets
    /// the single-mode capacitance (λ/2 Foster expansion, `C_n = C_line/2`).
    pub fn harmonic(base: &SingleModeParams<T>, n_modes: usize) -> Self {
        let f1 = base.resonator_frequency();
        let modes = (1..=n_modes)
            .map(|n| ModeSpec { frequency: f1 * T::from_count(n), capacitance: base.cr, loss: None })
            .collect();
        Self { cq: base.cq, cg: base.cg, c_kappa: base.c_kappa, r_load: base.r_load, modes }
    }

    /// Three harmonic modes on top of [`SingleModeParams::reference_default`].
    pub fn reference_default() -> Self {
        Self::harmonic(&SingleModeParams::reference_default(), defaults::N_MODES)
    }

    /// Adds a shunt loss resistance to mode `index` (0-based).
    pub fn with_mode_loss(mut self, index: usize, r: T) -> Self {
        self.modes[index].loss = Some(r);
        self
    }

    pub fn fundamental(&self) -> T {
        self.modes[0].frequency
    }

    pub fn validate(&self) -> Result<(), AnalysisError> {
        param_positive("cq", self.cq)?;
        param_positive("cg", self.cg)?;
        param_positive("c_kappa", self.c_kappa)?;
        param_positive("r_load", self.r_load)?;
        if self.modes.is_empty() {
            return Err(AnalysisError::InvalidParameter("at least one mode is required".into()));
        }
        for (i, m) in self.modes.iter().enumerate() {
            param_positive("mode frequency", m.frequency)?;
            param_positive("mode capacitance", m.capacitance)?;
            if let Some(r) = m.loss {
                param_positive("mode loss", r)?;
            }
            if i > 0 && m.frequency <= self.modes[i - 1].frequency {
                return Err(AnalysisError::InvalidParameter("mode frequencies must be strictly increasing".into()));
            }
        }
        Ok(())
    }
}

/// Qubit–line–tap geometry; positions are measured from the qubit end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TLineModelParams<T> {
    pub cq: T,
    pub cg: T,
    pub line: TLine<T>,
    /// Tap position along the line, m, in `[0, ℓ]`.
    pub port_position: T,
    pub c_kappa: T,
    pub r_load: T,
    /// Attenuation override for the open stub beyond the tap, Np/m.
    pub far_alpha: Option<T>,
}

impl<T: Real> TLineModelParams<T> {
    /// Reference 7 GHz line with the single-mode reference couplings, tapped at the qubit end.
    pub fn reference_default() -> Self {
        let s = SingleModeParams::<T>::reference_default();
        Self {
            cq: s.cq,
            cg: s.cg,
            line: default_line(),
            port_position: T::zero(),
            c_kappa: s.c_kappa,
            r_load: s.r_load,
            far_alpha: None,
        }
    }

    pub fn at_position(self, x: T) -> Self {
        Self { port_position: x, ..self }
    }

    pub fn at_fraction(self, frac: T) -> Self {
        self.at_position(frac * self.line.length)
    }

    /// Fundamental `vp / 2ℓ`, Hz.
    pub fn fundamental(&self) -> T {
        self.line.half_wave_frequency()
    }

    /// Tap position at which the open stub is a quarter wave at `f_hz`, i.e.
    /// where the standing wave driven at that frequency has a voltage node.
    pub fn null_position(&self, f_hz: T) -> T {
        self.line.length - self.line.vp / (T::lit(4.0) * f_hz)
    }

    pub fn validate(&self) -> Result<(), AnalysisError> {
        param_positive("cq", self.cq)?;
        param_positive("cg", self.cg)?;
        param_positive("c_kappa", self.c_kappa)?;
        param_positive("r_load", self.r_load)?;
        param_positive("line length", self.line.length)?;
        self.line.validate()?;
        if let Some(a) = self.far_alpha {
            if !(a.is_finite() && a >= T::zero()) {
                return Err(AnalysisError::InvalidParameter(format!("far_alpha must be non-negative, got {a}")));
            }
        }
        let x = self.port_position;
        if !(x >= T::zero() && x <= self.line.length) {
            return Err(AnalysisError::InvalidParameter(format!(
                "port position {x} m outside [0, {}] m",
                self.line.length
            )));
        }
        Ok(())
    }
}

fn load_branch<T: Real>(c_kappa: T, r_load: T) -> NetworkTree<T> {
    NetworkTree::series(Element::capacitor(c_kappa), NetworkTree::resistor(r_load))
}

fn tank_to_ground<T: Real>(e: Element<T>) -> NetworkTree<T> {
    NetworkTree::series(e, NetworkTree::short())
}

pub fn build_single_mode<T: Real>(p: &SingleModeParams<T>) -> Result<NetworkTree<T>, AnalysisError> {
    p.validate()?;
    Ok(NetworkTree::series(
        Element::capacitor(p.cg),
        NetworkTree::shunt(tank_to_ground(Element::parallel_lc(p.lr, p.cr)), load_branch(p.c_kappa, p.r_load)),
    ))
}

pub fn build_multi_mode<T: Real>(p: &MultiModeParams<T>) -> Result<NetworkTree<T>, AnalysisError> {
    p.validate()?;
    let stack = p
        .modes
        .iter()
        .rev()
        .fold(NetworkTree::short(), |rest, m| NetworkTree::series(m.element(), rest));
    Ok(NetworkTree::series(
        Element::capacitor(p.cg),
        NetworkTree::shunt(stack, load_branch(p.c_kappa, p.r_load)),
    ))
}

pub fn build_tline_model<T: Real>(p: &TLineModelParams<T>) -> Result<NetworkTree<T>, AnalysisError> {
    p.validate()?;
    let near = p.line.with_length(p.port_position);
    let mut far = p.line.with_length(p.line.length - p.port_position);
    if let Some(a) = p.far_alpha {
        far.alpha = a;
    }
    Ok(NetworkTree::series(
        Element::capacitor(p.cg),
        NetworkTree::line(
            near,
            NetworkTree::shunt(load_branch(p.c_kappa, p.r_load), NetworkTree::line(far, NetworkTree::open())),
        ),
    ))
}

/// Series Foster expansion of an open-ended line seen from one end:
/// the static term `C_line` followed by `n_modes` tanks with `C_n = C_line/2`
/// at `n·vp/2ℓ`, terminated in a short. Converges to `line(t, open)`.
pub fn foster_line_stack<T: Real>(line: &TLine<T>, n_modes: usize) -> Result<NetworkTree<T>, NetworkError> {
    line.validate()?;
    let c_line = line.total_capacitance();
    let f1 = line.half_wave_frequency();
    let stack = (1..=n_modes).rev().fold(NetworkTree::short(), |rest, n| {
        let mode = ModeSpec { frequency: f1 * T::from_count(n), capacitance: c_line / T::lit(2.0), loss: None };
        NetworkTree::series(mode.element(), rest)
    });
    Ok(NetworkTree::series(Element::capacitor(c_line), stack))
}

/// Bisection for a sign change of `f` on `[lo, hi]`; `None` when the ends share a sign.
pub(crate) fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, rel_tol: T) -> Option<T> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if (hi - lo).abs() <= rel_tol * mid.abs() {
            return Some(mid);
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) / T::lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::input_admittance;
    use std::f64::consts::PI;

    #[test]
    fn reference_values() {
        let p = SingleModeParams::<f64>::reference_default();
        assert!((p.resonator_frequency() - 7e9).abs() < 1.0);
        assert!((p.cr - 1.0 / (4.0 * 7e9 * 50.0)).abs() < 1e-24);
        let (w0, kappa) = p.ringdown_kappa().unwrap();
        assert!((kappa / (2.0 * PI * 5e6) - 1.0).abs() < 1e-9);
        assert!(w0 < 2.0 * PI * 7e9);
        assert!(p.cg > 6e-15 && p.cg < 7e-15);
        assert!(p.c_kappa > 1e-15 && p.c_kappa < 1e-13);
        assert!(p.validity_warnings().is_empty());
    }

    #[test]
    fn decoupled_qubit_sees_nothing() {
        let mut p = SingleModeParams::<f64>::reference_default();
        p.cg = 1e-24;
        let net = build_single_mode(&p).unwrap();
        let y = input_admittance(&net, 2.0 * PI * 5e9).unwrap().value;
        assert!(y.re.abs() < 1e-25);
    }

    #[test]
    fn one_mode_stack_is_the_single_mode_circuit() {
        let s = SingleModeParams::<f64>::reference_default();
        let a = build_single_mode(&s).unwrap();
        let b = build_multi_mode(&MultiModeParams::harmonic(&s, 1)).unwrap();
        for k in 1..200 {
            let w = 2.0 * PI * 1e8 * k as f64;
            let (ya, yb) = (input_admittance(&a, w).unwrap().value, input_admittance(&b, w).unwrap().value);
            assert!((ya - yb).norm() <= 1e-12 * ya.norm());
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        let mut p = SingleModeParams::<f64>::reference_default();
        p.cg = 0.0;
        assert!(build_single_mode(&p).is_err());
        let m = MultiModeParams::<f64> { modes: vec![], ..MultiModeParams::reference_default() };
        assert!(build_multi_mode(&m).is_err());
        let mut m = MultiModeParams::<f64>::reference_default();
        m.modes.swap(0, 1);
        assert!(build_multi_mode(&m).is_err());
        let t = TLineModelParams::<f64>::reference_default();
        assert!(build_tline_model(&t.at_position(-1e-6)).is_err());
        assert!(build_tline_model(&t.at_position(t.line.length * 1.01)).is_err());
        assert!(build_tline_model(&t.at_position(t.line.length)).is_ok());
    }

    #[test]
    fn null_position_is_quarter_wave_from_open_end() {
        let t = TLineModelParams::<f64>::reference_default();
        let f1 = t.fundamental();
        assert!(t.null_position(f1 / 2.0).abs() < 1e-15);
        assert!((t.null_position(f1) - t.line.length / 2.0).abs() < 1e-15);
    }

    #[test]
    fn f32_builders_work() {
        let p = SingleModeParams::<f32>::reference_default();
        let net = build_single_mode(&p).unwrap();
        let y = input_admittance(&net, 2.0 * std::f32::consts::PI * 5e9).unwrap().value;
        assert!(y.re > 0.0 && y.im > 0.0);
    }
}
