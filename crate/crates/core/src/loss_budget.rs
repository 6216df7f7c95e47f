//! Loss budget from π-pulse drive records in two readout-port configurations.
//!
//! In the anti-WISPE configuration internal loss is negligible, so the total
//! decay splits between the drive port and the readout port in the inverse
//! ratio of the pulse powers each needs. The drive-port rate carries over to
//! the WISPE configuration, where the pulse ratio then fixes the readout
//! rate and the remainder is internal loss.

use serde::{Deserialize, Serialize};

use crate::error::BudgetError;
use crate::scalar::{Real, HBAR};

/// Fraction of `1/t1(WISPE)` by which the internal rate may come out negative
/// (measurement noise) before the input is rejected.
pub const BUDGET_TOLERANCE: f64 = 0.05;

/// Drive pulse calibrated to a π rotation through one port.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseRecord<T> {
    pub port_id: String,
    /// Envelope peak, V.
    pub amplitude: T,
    /// Gaussian envelope length, s.
    pub duration: T,
    /// Total attenuation of this port's drive chain, dB.
    pub line_attenuation_db: T,
}

impl<T: Real> PulseRecord<T> {
    pub fn new(port_id: impl Into<String>, amplitude: T, duration: T, line_attenuation_db: T) -> Self {
        Self { port_id: port_id.into(), amplitude, duration, line_attenuation_db }
    }

    pub fn validate(&self) -> Result<(), BudgetError> {
        let bad = |what: &str, v: T| BudgetError::InvalidMeasurement(format!("{}: {what} = {v}", self.port_id));
        if !(self.amplitude.is_finite() && self.amplitude > T::zero()) {
            return Err(bad("amplitude must be positive", self.amplitude));
        }
        if !(self.duration.is_finite() && self.duration > T::zero()) {
            return Err(bad("duration must be positive", self.duration));
        }
        if !(self.line_attenuation_db.is_finite() && self.line_attenuation_db >= T::zero()) {
            return Err(bad("attenuation must be non-negative", self.line_attenuation_db));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigId {
    Wispe,
    AntiWispe,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigMeasurement<T> {
    pub config: ConfigId,
    /// Measured lifetime, s.
    pub t1_measured: T,
    pub qubit_port_pulse: PulseRecord<T>,
    pub readout_port_pulse: PulseRecord<T>,
}

impl<T: Real> ConfigMeasurement<T> {
    pub fn validate(&self) -> Result<(), BudgetError> {
        if !(self.t1_measured.is_finite() && self.t1_measured > T::zero()) {
            return Err(BudgetError::InvalidMeasurement(format!("t1 must be positive, got {}", self.t1_measured)));
        }
        self.qubit_port_pulse.validate()?;
        self.readout_port_pulse.validate()
    }

    /// Readout-port over qubit-port effective pulse power.
    pub fn power_ratio(&self) -> T {
        effective_power(&self.readout_port_pulse) / effective_power(&self.qubit_port_pulse)
    }
}

/// Decay rates (1/s) and the WISPE Purcell limit (s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBudget<T> {
    pub gamma_int: T,
    pub gamma_d: T,
    pub gamma_r_wispe: T,
    pub gamma_r_anti_wispe: T,
    pub purcell_limit_wispe: T,
    /// Set when a slightly negative internal rate (within tolerance) was clamped to zero.
    pub gamma_int_clamped: bool,
}

impl<T: Real> LossBudget<T> {
    pub fn t1_anti_wispe(&self) -> T {
        (self.gamma_d + self.gamma_r_anti_wispe).recip()
    }

    pub fn t1_wispe(&self) -> T {
        (self.gamma_int + self.gamma_d + self.gamma_r_wispe).recip()
    }

    pub fn internal_limit(&self) -> T {
        self.gamma_int.recip()
    }

    pub fn drive_limit(&self) -> T {
        self.gamma_d.recip()
    }
}

/// Relative pulse power `(amplitude · duration)² · 10^(−dB/10)`.
pub fn effective_power<T: Real>(p: &PulseRecord<T>) -> T {
    let area = p.amplitude * p.duration;
    area * area * T::lit(10.0).powf(-p.line_attenuation_db / T::lit(10.0))
}

/// `Q_c = 4 P_in / (ħ Ω²)`.
pub fn coupling_q_from_power<T: Real>(p_in: T, omega_rabi: T) -> T {
    T::lit(4.0) * p_in / (T::lit(HBAR) * omega_rabi * omega_rabi)
}

/// `n̄ = (Ω · Q_l / ω_q)²`.
pub fn photon_number<T: Real>(omega_rabi: T, q_loaded: T, omega_q: T) -> T {
    let x = omega_rabi * q_loaded / omega_q;
    x * x
}

/// Input–output form `n̄ = (4/ħω_q²) (Q_l²/Q_c) P_in`.
pub fn photon_number_from_drive<T: Real>(p_in: T, q_loaded: T, q_coupling: T, omega_q: T) -> T {
    T::lit(4.0) / (T::lit(HBAR) * omega_q * omega_q) * (q_loaded * q_loaded / q_coupling) * p_in
}

/// Absolute drive calibration of one port.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RabiCalib<T> {
    pub omega_rabi: T,
    pub q_loaded: T,
    pub omega_q: T,
    pub n_bar: T,
    pub q_coupling: T,
    pub p_in: T,
}

impl<T: Real> RabiCalib<T> {
    pub fn from_drive(omega_rabi: T, q_loaded: T, omega_q: T, p_in: T) -> Self {
        Self {
            omega_rabi,
            q_loaded,
            omega_q,
            n_bar: photon_number(omega_rabi, q_loaded, omega_q),
            q_coupling: coupling_q_from_power(p_in, omega_rabi),
            p_in,
        }
    }

    /// Both defining relations hold to `rel_tol`.
    pub fn is_consistent(&self, rel_tol: T) -> bool {
        let close = |a: T, b: T| (a - b).abs() <= rel_tol * a.abs().max(b.abs());
        close(self.n_bar, photon_number(self.omega_rabi, self.q_loaded, self.omega_q))
            && close(self.q_coupling, coupling_q_from_power(self.p_in, self.omega_rabi))
    }
}

fn inconsistent<T: Real>(quantity: &'static str, value: T) -> BudgetError {
    BudgetError::Inconsistent { quantity, value: value.as_f64() }
}

pub fn extract_budget<T: Real>(aw: &ConfigMeasurement<T>, w: &ConfigMeasurement<T>) -> Result<LossBudget<T>, BudgetError> {
    if aw.config != ConfigId::AntiWispe {
        return Err(BudgetError::InvalidMeasurement("first measurement must be the anti_wispe configuration".into()));
    }
    if w.config != ConfigId::Wispe {
        return Err(BudgetError::InvalidMeasurement("second measurement must be the wispe configuration".into()));
    }
    aw.validate()?;
    w.validate()?;

    let total_aw = aw.t1_measured.recip();
    let r_aw = aw.power_ratio();
    let gamma_d = total_aw * r_aw / (T::one() + r_aw);
    let gamma_r_aw = total_aw / (T::one() + r_aw);
    let gamma_r_w = gamma_d / w.power_ratio();
    let total_w = w.t1_measured.recip();
    let mut gamma_int = total_w - gamma_d - gamma_r_w;

    for (q, v) in [("gamma_d", gamma_d), ("gamma_r_anti_wispe", gamma_r_aw), ("gamma_r_wispe", gamma_r_w)] {
        if !(v.is_finite() && v >= T::zero()) {
            return Err(inconsistent(q, v));
        }
    }
    let mut clamped = false;
    if gamma_int < T::zero() {
        if gamma_int < -T::lit(BUDGET_TOLERANCE) * total_w {
            return Err(inconsistent("gamma_int", gamma_int));
        }
        gamma_int = T::zero();
        clamped = true;
    }
    Ok(LossBudget {
        gamma_int,
        gamma_d,
        gamma_r_wispe: gamma_r_w,
        gamma_r_anti_wispe: gamma_r_aw,
        purcell_limit_wispe: gamma_r_w.recip(),
        gamma_int_clamped: clamped,
    })
}

/// Rates (1/s) from which [`forward_measurements`] synthesizes a data set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossRates<T> {
    pub gamma_int: T,
    pub gamma_d: T,
    pub gamma_r_anti_wispe: T,
    pub gamma_r_wispe: T,
}

/// Measurements the two configurations would produce for `rates`, with
/// internal loss absent in anti-WISPE. The qubit-port pulse is `qubit`
/// in both configurations; the readout pulse keeps its duration and
/// attenuation `readout_attenuation_db`, with amplitude set by the rate ratio.
pub fn forward_measurements<T: Real>(
    rates: &LossRates<T>,
    qubit: &PulseRecord<T>,
    readout_port_id: &str,
    readout_attenuation_db: T,
) -> (ConfigMeasurement<T>, ConfigMeasurement<T>) {
    let p_q = effective_power(qubit);
    let readout = |ratio: T| {
        // amplitude whose effective power is ratio · p_q
        let att = T::lit(10.0).powf(readout_attenuation_db / T::lit(10.0));
        let amp = (ratio * p_q * att).sqrt() / qubit.duration;
        PulseRecord::new(readout_port_id, amp, qubit.duration, readout_attenuation_db)
    };
    let aw = ConfigMeasurement {
        config: ConfigId::AntiWispe,
        t1_measured: (rates.gamma_d + rates.gamma_r_anti_wispe).recip(),
        qubit_port_pulse: qubit.clone(),
        readout_port_pulse: readout(rates.gamma_d / rates.gamma_r_anti_wispe),
    };
    let w = ConfigMeasurement {
        config: ConfigId::Wispe,
        t1_measured: (rates.gamma_int + rates.gamma_d + rates.gamma_r_wispe).recip(),
        qubit_port_pulse: qubit.clone(),
        readout_port_pulse: readout(rates.gamma_d / rates.gamma_r_wispe),
    };
    (aw, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pulse(a: f64, db: f64) -> PulseRecord<f64> {
        PulseRecord::new("p", a, 1.0, db)
    }

    #[test]
    fn power_rules() {
        assert_eq!(effective_power(&pulse(1.0, 0.0)), 1.0);
        assert!((effective_power(&pulse(1.0, 13.0)) - 0.050_118_723_362_727_2).abs() < 1e-15);
        assert!((effective_power(&pulse(2.0, 3.0)) / effective_power(&pulse(1.0, 3.0)) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn coupling_q_and_photon_number() {
        assert!((coupling_q_from_power(HBAR / 4.0, 1.0_f64) - 1.0).abs() < 1e-12);
        let q: f64 = coupling_q_from_power(1e-15, 2.0 * PI * 10e6);
        assert!((coupling_q_from_power(1e-15 / 4.0, PI * 10e6) / q - 1.0).abs() < 1e-12);
        assert!((photon_number(5.0_f64, 2.0, 10.0) - 1.0).abs() < 1e-15);
        assert_eq!(photon_number(5.0, 0.0, 10.0), 0.0);
        let c = RabiCalib::from_drive(2.0 * PI * 1e6, 1e4, 2.0 * PI * 5e9, 3e-16);
        assert!(c.is_consistent(1e-12));
        let io = photon_number_from_drive(c.p_in, c.q_loaded, c.q_coupling, c.omega_q);
        assert!((io / c.n_bar - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equal_powers_split_evenly() {
        let aw = ConfigMeasurement {
            config: ConfigId::AntiWispe,
            t1_measured: 1e-6,
            qubit_port_pulse: pulse(1.0, 0.0),
            readout_port_pulse: pulse(1.0, 0.0),
        };
        let w = ConfigMeasurement { config: ConfigId::Wispe, t1_measured: 1e-4, ..aw.clone() };
        let b = extract_budget(&aw, &w);
        // the wispe pulse ratio of 1 forces gamma_r_w = gamma_d = 5e5 > 1/t1_w
        assert!(matches!(b, Err(BudgetError::Inconsistent { quantity: "gamma_int", .. })));
        let w = ConfigMeasurement { readout_port_pulse: pulse(1e3, 0.0), t1_measured: 1.9e-6, ..w };
        let b = extract_budget(&aw, &w).unwrap();
        assert!((b.gamma_d - 5e5).abs() < 1e-9 && (b.gamma_r_anti_wispe - 5e5).abs() < 1e-9);
        assert!(extract_budget(&w, &aw).is_err());
    }

    #[test]
    fn reference_round_trip() {
        let rates: LossRates<f64> = LossRates {
            gamma_int: 1.0 / 100e-6,
            gamma_d: 1.0 / 2e-3,
            gamma_r_anti_wispe: 1.0 / 1.05e-6,
            gamma_r_wispe: 1.0 / 1.59e-3,
        };
        let (aw, w) = forward_measurements(&rates, &PulseRecord::new("q", 0.2, 40e-9, 60.0), "r", 47.0);
        let b = extract_budget(&aw, &w).unwrap();
        for (got, want) in [
            (b.gamma_int, rates.gamma_int),
            (b.gamma_d, rates.gamma_d),
            (b.gamma_r_anti_wispe, rates.gamma_r_anti_wispe),
            (b.gamma_r_wispe, rates.gamma_r_wispe),
        ] {
            assert!((got / want - 1.0).abs() < 1e-9, "{got} vs {want}");
        }
        assert!((b.t1_anti_wispe() - aw.t1_measured).abs() < 1e-18);
        assert!(!b.gamma_int_clamped);
    }

    #[test]
    fn invalid_pulses_rejected() {
        let aw = ConfigMeasurement {
            config: ConfigId::AntiWispe,
            t1_measured: 1e-6,
            qubit_port_pulse: pulse(0.0, 0.0),
            readout_port_pulse: pulse(1.0, -1.0),
        };
        let w = ConfigMeasurement { config: ConfigId::Wispe, ..aw.clone() };
        assert!(matches!(extract_budget(&aw, &w), Err(BudgetError::InvalidMeasurement(_))));
    }
}
