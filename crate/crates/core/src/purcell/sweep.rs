use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{build_tline_model, TLineModelParams};
use crate::error::{AnalysisError, NetworkError};
use crate::network::{input_admittance, NetworkTree};
use crate::purcell::lifetime::{lifetime_from_admittance, Lifetime};
use crate::scalar::{omega_from_hz, Cx, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

/// Default sweep density.
pub const POINTS_PER_DECADE: usize = 2001;

/// Point count giving [`POINTS_PER_DECADE`] over `[f_start, f_stop]`.
pub fn default_points(f_start: f64, f_stop: f64) -> usize {
    ((f_stop / f_start).log10() * POINTS_PER_DECADE as f64).ceil() as usize + 1
}

/// Per-sample status written to the `marker` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMarker {
    Finite,
    /// Re[Y] at the numerical floor; lifetime unbounded.
    Open,
    /// Exact short seen from the qubit; lifetime zero.
    Singular,
    Overflow,
    PassivityViolation,
}

impl SampleMarker {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleMarker::Finite => "finite",
            SampleMarker::Open => "open",
            SampleMarker::Singular => "singular",
            SampleMarker::Overflow => "overflow",
            SampleMarker::PassivityViolation => "passivity_violation",
        }
    }
}

/// Admittance and lifetime samples over a frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub model_tag: String,
    /// Tap position for port-position sweeps, m.
    pub port_position: Option<T>,
    /// Strictly increasing, Hz.
    pub freq_hz: Vec<T>,
    pub y_real: Vec<T>,
    pub y_imag: Vec<T>,
    /// Seconds; `+∞` for open, `0` for singular, NaN for failed samples.
    pub t1: Vec<T>,
    pub marker: Vec<SampleMarker>,
}

impl<T: Real> SweepResult<T> {
    pub fn len(&self) -> usize {
        self.freq_hz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freq_hz.is_empty()
    }

    /// Index of the smallest finite lifetime.
    pub fn argmin_t1(&self) -> Option<usize> {
        (0..self.len())
            .filter(|&i| self.marker[i] == SampleMarker::Finite)
            .min_by(|&a, &b| self.t1[a].partial_cmp(&self.t1[b]).unwrap())
    }

    /// Lifetime at `f` by log–log interpolation between finite samples.
    pub fn t1_at(&self, f: T) -> Option<T> {
        interp_log(&self.freq_hz, &self.t1, f)
    }
}

pub(crate) fn interp_log<T: Real>(xs: &[T], ys: &[T], x: T) -> Option<T> {
    let ok = |i: usize| ys[i].is_finite() && ys[i] > T::zero();
    let hi = xs.partition_point(|&v| v < x);
    if hi < xs.len() && xs[hi] == x && ok(hi) {
        return Some(ys[hi]);
    }
    let left = (0..hi).rev().find(|&i| ok(i));
    let right = (hi..xs.len()).find(|&i| ok(i));
    match (left, right) {
        (Some(l), Some(r)) => {
            let t = (x / xs[l]).ln() / (xs[r] / xs[l]).ln();
            Some((ys[l].ln() + t * (ys[r].ln() - ys[l].ln())).exp())
        }
        _ => None,
    }
}

/// Frequency axis with `n` points between the inclusive ends.
pub fn frequency_grid<T: Real>(f_start: T, f_stop: T, n: usize, spacing: Spacing) -> Result<Vec<T>, AnalysisError> {
    if !(f_start.is_finite() && f_stop.is_finite() && f_start > T::zero() && f_start < f_stop) {
        return Err(AnalysisError::InvalidSweep(format!("need 0 < f_start < f_stop, got [{f_start}, {f_stop}]")));
    }
    if n < 2 {
        return Err(AnalysisError::InvalidSweep(format!("need at least 2 points, got {n}")));
    }
    let last = T::from_count(n - 1);
    let mut axis: Vec<T> = match spacing {
        Spacing::Linear => (0..n).map(|i| f_start + (f_stop - f_start) * T::from_count(i) / last).collect(),
        Spacing::Log => {
            let (a, b) = (f_start.ln(), f_stop.ln());
            (0..n).map(|i| (a + (b - a) * T::from_count(i) / last).exp()).collect()
        }
    };
    axis[0] = f_start;
    axis[n - 1] = f_stop;
    if axis.windows(2).any(|w| w[1] <= w[0]) {
        return Err(AnalysisError::InvalidSweep("axis is not strictly increasing at this precision".into()));
    }
    Ok(axis)
}

fn sample<T: Real>(net: &NetworkTree<T>, cq: T, f: T) -> (Cx<T>, T, SampleMarker) {
    let nan = Cx::new(T::nan(), T::nan());
    match input_admittance(net, omega_from_hz(f)) {
        Ok(y) => match lifetime_from_admittance(y, cq) {
            Ok(Lifetime::Finite(t)) => (y.value, t, SampleMarker::Finite),
            Ok(Lifetime::Open) => (y.value, T::infinity(), SampleMarker::Open),
            Err(_) => (y.value, T::nan(), SampleMarker::PassivityViolation),
        },
        Err(NetworkError::Singularity { .. }) => (nan, T::zero(), SampleMarker::Singular),
        Err(_) => (nan, T::nan(), SampleMarker::Overflow),
    }
}

/// Evaluates `net` on an explicit strictly increasing axis (Hz).
/// Per-point failures become markers; samples are computed in parallel
/// and stored in axis order.
pub fn sweep_axis<T: Real>(net: &NetworkTree<T>, cq: T, axis: Vec<T>, model_tag: &str) -> Result<SweepResult<T>, AnalysisError> {
    if !(cq.is_finite() && cq > T::zero()) {
        return Err(AnalysisError::InvalidParameter(format!("cq must be positive, got {cq}")));
    }
    if axis.is_empty() || axis.windows(2).any(|w| !(w[1] > w[0])) || !(axis[0] > T::zero()) {
        return Err(AnalysisError::InvalidSweep("axis must be positive and strictly increasing".into()));
    }
    let samples: Vec<_> = axis.par_iter().map(|&f| sample(net, cq, f)).collect();
    let mut out = SweepResult {
        model_tag: model_tag.to_owned(),
        port_position: None,
        y_real: Vec::with_capacity(axis.len()),
        y_imag: Vec::with_capacity(axis.len()),
        t1: Vec::with_capacity(axis.len()),
        marker: Vec::with_capacity(axis.len()),
        freq_hz: axis,
    };
    for (y, t, m) in samples {
        out.y_real.push(y.re);
        out.y_imag.push(y.im);
        out.t1.push(t);
        out.marker.push(m);
    }
    Ok(out)
}

pub fn frequency_sweep<T: Real>(
    net: &NetworkTree<T>,
    cq: T,
    f_start: T,
    f_stop: T,
    n_points: usize,
    spacing: Spacing,
) -> Result<SweepResult<T>, AnalysisError> {
    sweep_axis(net, cq, frequency_grid(f_start, f_stop, n_points, spacing)?, "network")
}

/// One sweep per tap position, each tagged with its position.
pub fn port_position_sweep<T: Real>(
    p: &TLineModelParams<T>,
    positions: &[T],
    f_start: T,
    f_stop: T,
    n_points: usize,
    spacing: Spacing,
) -> Result<Vec<SweepResult<T>>, AnalysisError> {
    let axis = frequency_grid(f_start, f_stop, n_points, spacing)?;
    let nets = positions
        .iter()
        .map(|&x| build_tline_model(&p.at_position(x)))
        .collect::<Result<Vec<_>, _>>()?;
    nets.par_iter()
        .zip(positions.par_iter())
        .map(|(net, &x)| {
            let mut s = sweep_axis(net, p.cq, axis.clone(), "tline")?;
            s.port_position = Some(x);
            Ok(s)
        })
        .collect()
}

/// Column layout of the sweep CSV.
pub const SWEEP_CSV_HEADER: [&str; 6] = ["freq_hz", "port_pos_m", "re_y_s", "im_y_s", "t1_s", "marker"];

/// Fixed 17-significant-digit rendering used in every numeric CSV field.
pub fn fmt_sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Writes one or more sweeps as long-format CSV; `port_pos_m` is empty for
/// sweeps without a position.
pub fn write_sweep_csv<T: Real, W: Write>(sweeps: &[SweepResult<T>], w: W) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(SWEEP_CSV_HEADER)?;
    for s in sweeps {
        let pos = s.port_position.map(|x| fmt_sig17(x.as_f64())).unwrap_or_default();
        for i in 0..s.len() {
            wtr.write_record([
                fmt_sig17(s.freq_hz[i].as_f64()),
                pos.clone(),
                fmt_sig17(s.y_real[i].as_f64()),
                fmt_sig17(s.y_imag[i].as_f64()),
                fmt_sig17(s.t1[i].as_f64()),
                s.marker[i].as_str().to_owned(),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}
