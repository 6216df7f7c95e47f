use serde::{Deserialize, Serialize};

use crate::scalar::{Cx, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImmittanceKind {
    /// Ohms.
    Impedance,
    /// Siemens.
    Admittance,
}

/// A complex impedance or admittance, tagged with which one it is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexImmittance<T> {
    pub value: Cx<T>,
    pub kind: ImmittanceKind,
}

impl<T: Real> ComplexImmittance<T> {
    pub fn impedance(z: Cx<T>) -> Self {
        Self { value: z, kind: ImmittanceKind::Impedance }
    }

    pub fn admittance(y: Cx<T>) -> Self {
        Self { value: y, kind: ImmittanceKind::Admittance }
    }

    /// The admittance form. A zero impedance maps to an infinite admittance.
    pub fn to_admittance(self) -> Self {
        match self.kind {
            ImmittanceKind::Admittance => self,
            ImmittanceKind::Impedance => Self::admittance(self.value.inv()),
        }
    }

    pub fn to_impedance(self) -> Self {
        match self.kind {
            ImmittanceKind::Impedance => self,
            ImmittanceKind::Admittance => Self::impedance(self.value.inv()),
        }
    }

    /// Admittance value in siemens.
    pub fn y(self) -> Cx<T> {
        self.to_admittance().value
    }

    /// Impedance value in ohms.
    pub fn z(self) -> Cx<T> {
        self.to_impedance().value
    }
}
