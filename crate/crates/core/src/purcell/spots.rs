use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::purcell::sweep::SweepResult;
use crate::scalar::Real;

/// Minimum peak-to-baseline lifetime ratio of a sweet spot.
pub const MIN_PROMINENCE: f64 = 10.0;
/// Minimum sweep density accepted by [`find_sweet_spots`].
pub const MIN_POINTS_PER_OCTAVE: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpotKind {
    /// Below the fundamental: interference along the line (WISPE).
    BelowFundamental,
    /// Between resonator modes.
    InterMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweetSpot<T> {
    pub frequency: T,
    /// Peak lifetime, s (`+∞` for an open-circuit sample).
    pub t1_peak: T,
    pub kind: SpotKind,
    /// Width of the region above the geometric mid-level between peak and baseline, Hz.
    pub neighborhood_width: T,
    /// Peak over baseline lifetime ratio.
    pub prominence: T,
}

/// Smallest local density of the axis, in points per octave.
pub fn points_per_octave<T: Real>(axis: &[T]) -> T {
    axis.windows(2)
        .map(|w| T::LN_2() / (w[1] / w[0]).ln())
        .fold(T::infinity(), T::min)
}

/// Local lifetime maxima standing at least [`MIN_PROMINENCE`]× above a
/// baseline taken half an octave away on either side (geometric mean of
/// the two, or the one side inside the sweep).
pub fn find_sweet_spots<T: Real>(s: &SweepResult<T>, f1: T) -> Result<Vec<SweetSpot<T>>, AnalysisError> {
    let n = s.len();
    if n < 3 {
        return Err(AnalysisError::Resolution { points_per_octave: 0.0 });
    }
    let (lo, hi) = (s.freq_hz[0], s.freq_hz[n - 1]);
    if lo > T::lit(0.2) * f1 || hi < f1 {
        return Err(AnalysisError::Coverage { need_lo: 0.2 * f1.as_f64(), need_hi: f1.as_f64() });
    }
    let ppo = points_per_octave(&s.freq_hz);
    if ppo < T::lit(MIN_POINTS_PER_OCTAVE) {
        return Err(AnalysisError::Resolution { points_per_octave: ppo.as_f64() });
    }
    let t = &s.t1;
    let half_octave = T::SQRT_2();
    let mut spots = Vec::new();
    for i in 1..n - 1 {
        if t[i].is_nan() || !(t[i] > t[i - 1]) || !(t[i] >= t[i + 1]) {
            continue;
        }
        let f = s.freq_hz[i];
        let sides: Vec<T> = [f / half_octave, f * half_octave]
            .into_iter()
            .filter(|&x| x >= lo && x <= hi)
            .filter_map(|x| s.t1_at(x))
            .collect();
        if sides.is_empty() {
            continue;
        }
        let baseline = (sides.iter().map(|v| v.ln()).sum::<T>() / T::from_count(sides.len())).exp();
        let prominence = t[i] / baseline;
        if !(prominence >= T::lit(MIN_PROMINENCE)) {
            continue;
        }
        let level = if t[i].is_finite() {
            (t[i] * baseline).sqrt()
        } else {
            baseline * T::lit(MIN_PROMINENCE)
        };
        spots.push(SweetSpot {
            frequency: f,
            t1_peak: t[i],
            kind: if f < f1 { SpotKind::BelowFundamental } else { SpotKind::InterMode },
            neighborhood_width: width_at(s, i, level),
            prominence,
        });
    }
    Ok(spots)
}

fn width_at<T: Real>(s: &SweepResult<T>, peak: usize, level: T) -> T {
    let f = &s.freq_hz;
    let t = &s.t1;
    let cross = |a: usize, b: usize| {
        // crossing between samples a (above) and b (below), log–log
        if !(t[b] > T::zero()) || !t[a].is_finite() {
            return f[b];
        }
        let x = (level / t[b]).ln() / (t[a] / t[b]).ln();
        (f[b].ln() + x * (f[a].ln() - f[b].ln())).exp()
    };
    let mut l = peak;
    while l > 0 && t[l - 1] >= level {
        l -= 1;
    }
    let left = if l == 0 { f[0] } else { cross(l, l - 1) };
    let mut r = peak;
    while r + 1 < f.len() && t[r + 1] >= level {
        r += 1;
    }
    let right = if r + 1 == f.len() { f[r] } else { cross(r, r + 1) };
    right - left
}

/// Highest-prominence spot of the given kind.
pub fn strongest<T: Real>(spots: &[SweetSpot<T>], kind: SpotKind) -> Option<SweetSpot<T>> {
    spots
        .iter()
        .filter(|s| s.kind == kind)
        .copied()
        .max_by(|a, b| a.prominence.partial_cmp(&b.prominence).unwrap())
}
