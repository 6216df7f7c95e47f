//! Microwave network simulation for qubit Purcell decay.
//!
//! A readout circuit is described as a [`network::NetworkTree`] seen from the
//! qubit's junction terminals; its input admittance `Y(ω)` gives the qubit
//! lifetime `T1 = Cq / Re[Y]`. On top of that sit builders for lumped,
//! multi-mode and distributed readout circuits ([`circuits`]), sweeps and
//! sweet-spot search ([`purcell`]), loss-budget extraction from π-pulse
//! calibrations ([`loss_budget`]) and a port-placement figure of merit on
//! gridded mode fields ([`field`]).
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below fix the scalar to `f64`, and [`f32`] mirrors them.
//! Units are SI throughout.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuits;
pub mod error;
pub mod field;
pub mod loss_budget;
pub mod network;
pub mod purcell;
pub mod scalar;

pub use error::{AnalysisError, BudgetError, FieldError, NetworkError};
pub use scalar::Real;

pub type Complex = scalar::Cx<f64>;
pub type ComplexImmittance = network::ComplexImmittance<f64>;
pub type TwoPortAbcd = network::TwoPortAbcd<f64>;
pub type Element = network::Element<f64>;
pub type TLine = network::TLine<f64>;
pub type NetworkTree = network::NetworkTree<f64>;
pub type SingleModeParams = circuits::SingleModeParams<f64>;
pub type MultiModeParams = circuits::MultiModeParams<f64>;
pub type TLineModelParams = circuits::TLineModelParams<f64>;
pub type SweepResult = purcell::SweepResult<f64>;
pub type SweetSpot = purcell::SweetSpot<f64>;
pub type Lifetime = purcell::Lifetime<f64>;
pub type AnalyticPurcellParams = purcell::AnalyticPurcellParams<f64>;
pub type PulseRecord = loss_budget::PulseRecord<f64>;
pub type ConfigMeasurement = loss_budget::ConfigMeasurement<f64>;
pub type LossBudget = loss_budget::LossBudget<f64>;
pub type FieldGrid = field::FieldGrid<f64>;
pub type OverlapMap = field::OverlapMap<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type Complex = crate::scalar::Cx<f32>;
    pub type ComplexImmittance = crate::network::ComplexImmittance<f32>;
    pub type TwoPortAbcd = crate::network::TwoPortAbcd<f32>;
    pub type Element = crate::network::Element<f32>;
    pub type TLine = crate::network::TLine<f32>;
    pub type NetworkTree = crate::network::NetworkTree<f32>;
    pub type SingleModeParams = crate::circuits::SingleModeParams<f32>;
    pub type MultiModeParams = crate::circuits::MultiModeParams<f32>;
    pub type TLineModelParams = crate::circuits::TLineModelParams<f32>;
    pub type SweepResult = crate::purcell::SweepResult<f32>;
    pub type FieldGrid = crate::field::FieldGrid<f32>;
}
