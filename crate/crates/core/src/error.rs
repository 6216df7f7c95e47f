use thiserror::Error;

/// Location of a subtree inside a [`crate::network::NetworkTree`], root first.
pub type TreePath = Vec<&'static str>;

pub(crate) fn render_path(path: &[&'static str]) -> String {
    if path.is_empty() {
        "<root>".to_owned()
    } else {
        path.join("/")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("angular frequency must be positive and finite, got {0}")]
    InvalidFrequency(f64),
    #[error("exact short circuit at {}", render_path(.path))]
    Singularity { path: TreePath },
    #[error("non-finite intermediate value at {}", render_path(.path))]
    NumericOverflow { path: TreePath },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("passivity violation: Re(Y) = {re_y:e} S is below the -1e-15 S floor")]
    PassivityViolation { re_y: f64 },
    #[error("qubit-resonator detuning is zero")]
    Resonance,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("sweep resolution too coarse: {points_per_octave:.1} points per octave (need at least 50)")]
    Resolution { points_per_octave: f64 },
    #[error("sweep does not cover [{need_lo:e}, {need_hi:e}) Hz")]
    Coverage { need_lo: f64, need_hi: f64 },
    #[error("numerical search failed: {0}")]
    Search(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BudgetError {
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),
    #[error(
        "inconsistent measurement: {quantity} = {value:e} 1/s; assumption violated: internal losses must be \
         negligible against the anti-WISPE decay rate"
    )]
    Inconsistent { quantity: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("grid ingestion failed: {0}")]
    Ingestion(String),
    #[error("grid ingestion failed at row {row}: {msg}")]
    Row { row: usize, msg: String },
    #[error("degenerate field: no voxel has a defined overlap metric")]
    Degenerate,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
