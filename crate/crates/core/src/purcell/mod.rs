//! Qubit lifetime from admittance, frequency and tap-position sweeps,
//! sweet-spot detection and the dispersive single-mode oracle.
mod calibrate;
mod lifetime;
mod spots;
mod sweep;

pub use calibrate::{coupling_from_avoided_crossing, lorentzian_linewidth, normal_modes};
pub use lifetime::{
    analytic_purcell, lifetime_from_admittance, AnalyticPurcellParams, Lifetime, LIFETIME_GUARD_S,
    PASSIVITY_FLOOR_S, REAL_FLOOR_S,
};
pub use spots::{find_sweet_spots, points_per_octave, strongest, SpotKind, SweetSpot, MIN_POINTS_PER_OCTAVE, MIN_PROMINENCE};
pub use sweep::{
    default_points, fmt_sig17, frequency_grid, frequency_sweep, port_position_sweep, sweep_axis, write_sweep_csv,
    SampleMarker, Spacing, SweepResult, POINTS_PER_DECADE, SWEEP_CSV_HEADER,
};
