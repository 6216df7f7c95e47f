//! Complex immittances, two-port transfer matrices and one-port composition trees.

mod abcd;
mod element;
mod immittance;
mod tree;

pub use abcd::{cascade, TwoPortAbcd};
pub use element::{element_abcd, Element, TLine};
pub use immittance::{ComplexImmittance, ImmittanceKind};
pub use tree::{input_admittance, NetworkTree, PortValue};
